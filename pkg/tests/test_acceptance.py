"""Acceptance criteria 1-12, exact equality throughout.

Each test prints one ``criterion N: PASS|FAIL`` line.  Run the file directly
(``python3 tests/test_acceptance.py``) to get just those lines.
"""

from __future__ import annotations

import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

from fhl.cohomology import betti, binomial_check, homology_dims
from fhl.filtering import basis_change, verify_identities
from fhl.laplacian import closed_form_spectrum, gamma_matrix, trace_identity
from fhl.liealg import AlgebraSpec, Chain, d, graded_basis
from fhl.partitions import (
    DP,
    FrobeniusForm,
    enumerate_partitions,
    frobenius,
    is_nonsingular,
    lambda_inverse,
    lambda_map,
    order_leq,
    phi,
    psi,
    strict_count_check,
    strict_partitions,
    verify_series_identity,
)
from fhl.qlinalg import SparseMatrix, rank
from fhl.stablecycles import explicit_cycle, independent_mod_boundaries, is_stable, stab_pos_decomposition

FAMILIES = ("witt", "loop")


def report(number: int, ok: bool, detail: str, started: float):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - started:.1f}s)"
    capture = getattr(report, "capsys", None)
    if capture is not None:
        with capture.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


@pytest.fixture(autouse=True)
def _expose_capsys(capsys):
    report.capsys = capsys
    yield
    report.capsys = None


def _dims(spec, n):
    return sorted({len(p) for p in strict_partitions(n, spec.k)} - {0})


def _nullity(m: SparseMatrix, lam) -> int:
    shifted = m - SparseMatrix.identity(m.nrows).scale(lam) if lam else m
    return m.nrows - rank(shifted)


def test_criterion_01_betti_numbers_count_main_partitions():
    t0 = time.perf_counter()
    bad = []
    for family in FAMILIES:
        for k in (1, 2, 3):
            top = 40 if k == 1 else 25
            for n in range(top + 1):
                for q in _dims(AlgebraSpec(family, k), n):
                    if k == 1 and n > 25 and q > 5:
                        continue
                    spec = AlgebraSpec(family, k)
                    if betti(spec, n, q) != len(enumerate_partitions("main", k, n, q)):
                        bad.append((family, k, n, q))
    report(1, not bad, f"mismatched slices: {bad[:5]}", t0)


def test_criterion_02_binomial_totals():
    t0 = time.perf_counter()
    bad = []
    for family in FAMILIES:
        for k in (1, 2, 3):
            for q in range(1, (5 if k == 1 else 3) + 1):
                if not binomial_check(AlgebraSpec(family, k), q):
                    bad.append((family, k, q))
    report(2, not bad, f"failing (family, k, q): {bad}", t0)


def test_criterion_03_filtering_bases():
    t0 = time.perf_counter()
    bad = []
    for family in FAMILIES:
        for k in (1, 2, 3):
            spec = AlgebraSpec(family, k)
            for n in range(1, 26):
                for q in _dims(spec, n):
                    bc = basis_change(spec, n, q)  # raises unless both families are bases
                    size = len(graded_basis(spec, n, q))
                    if len(bc.shapes) != size or bc.tau.shape != (size, size) or bc.triangular_violations():
                        bad.append((family, k, n, q))
    report(3, not bad, f"bad slices: {bad[:5]}", t0)


def test_criterion_04_identity_suite():
    t0 = time.perf_counter()
    names = {f: set() for f in FAMILIES}
    bad = []
    for family in FAMILIES:
        for k in (1, 2, 3):
            for n in range(21):
                for row in verify_identities(AlgebraSpec(family, k), n):
                    names[family].add(row["identity"])
                    if not row["pass"]:
                        bad.append(row)
    ok = not bad and len(names["witt"]) == 5 and len(names["loop"]) == 7
    report(4, ok, f"identities witt={len(names['witt'])} loop={len(names['loop'])}, failures={len(bad)}", t0)


def test_criterion_05_series_identities():
    t0 = time.perf_counter()
    sylvester = [verify_series_identity("sylvester", k, 60) for k in (1, 2, 3)]
    strict = [strict_count_check(k, n) for k in (1, 2, 3) for n in range(31)]
    report(5, all(sylvester) and all(strict), f"sylvester={sylvester}, strict counts ok={all(strict)}", t0)


def test_criterion_06_level_one_spectrum():
    t0 = time.perf_counter()
    spec = AlgebraSpec("witt", 1)
    bad = []
    for n in range(21):
        predicted = closed_form_spectrum(1, n)
        found = Counter()
        for q in [0] + _dims(spec, n) if n == 0 else _dims(spec, n):
            g = gamma_matrix(spec, n, q)
            for lam in predicted:
                found[lam] += _nullity(g, lam)
            if _nullity(g, 0) != len(enumerate_partitions("main", 1, n, q)):
                bad.append(("harmonic", n, q))
        if dict(found) != predicted or sum(predicted.values()) != sum(
                len(graded_basis(spec, n, q)) for q in range(n + 2)):
            bad.append(("spectrum", n))
        if any(Fraction(v).denominator != 1 or v < 0 for v in predicted):
            bad.append(("integrality", n))
    ok = not bad and closed_form_spectrum(1, 3) == {1: 2}
    report(6, ok, f"problems: {bad[:5]}", t0)


def test_criterion_07_level_zero_spectrum():
    t0 = time.perf_counter()
    spec = AlgebraSpec("witt", 0)
    bad = []
    positive_harmonic = []
    for n in range(13):
        predicted = closed_form_spectrum(0, n)
        found = Counter()
        for q in range(0, n + 3):
            if not graded_basis(spec, n, q):
                continue
            g = gamma_matrix(spec, n, q)
            for lam in predicted:
                found[lam] += _nullity(g, lam)
            if q > 0:
                positive_harmonic += [(n, q)] * _nullity(g, 0)
        total = sum(len(graded_basis(spec, n, q)) for q in range(n + 3))
        if dict(found) != predicted or sum(predicted.values()) != total:
            bad.append(n)
    ok = not bad and positive_harmonic == [(0, 1)]
    report(7, ok, f"bad degrees {bad}, harmonic in positive dimension at {positive_harmonic}", t0)


def test_criterion_08_trace_identity():
    t0 = time.perf_counter()
    bad = [n for n in range(26) if not trace_identity(n)]
    report(8, not bad, f"bad degrees {bad}", t0)


def test_criterion_09_stable_triple_agreement():
    t0 = time.perf_counter()
    bad = []
    for family in FAMILIES:
        for k in (1, 2):
            spec = AlgebraSpec(family, k)
            for n in range(1, 21):
                for q in range(1, 5):
                    if not graded_basis(spec, n, q):
                        continue
                    rep = stab_pos_decomposition(spec, n, q)
                    if not rep.ok or len(rep.basis) + rep.dim_pos != rep.dim_c:
                        bad.append((family, k, n, q, rep.flags))
    report(9, not bad, f"bad slices: {bad[:3]}", t0)


def test_criterion_10_explicit_cycles():
    t0 = time.perf_counter()
    bad = []
    for family in FAMILIES:
        for k in (1, 2):
            spec = AlgebraSpec(family, k)
            for n in range(1, 19):
                for q in _dims(spec, n):
                    mains = enumerate_partitions("main", k, n, q)
                    cycles = [explicit_cycle(p, family, k) for p in mains]
                    for p, c in zip(mains, cycles):
                        lower = all(
                            Fraction(v).denominator == 1 and not is_nonsingular(key, k) and order_leq(p, key, k)
                            for key, v in c.items() if key != p)
                        if c.coeff(p) != 1 or not lower or d(spec, c) or not is_stable(c, spec):
                            bad.append((family, k, p))
                    if len(cycles) != betti(spec, n, q) or not independent_mod_boundaries(spec, cycles):
                        bad.append((family, k, n, q))
    witt = explicit_cycle((1, 4), "witt", 1) == Chain.monomial(1, 4) - Chain.monomial(2, 3, coeff=3)
    loop = explicit_cycle((1, 4), "loop", 1) == Chain.monomial(1, 4)
    report(10, not bad and witt and loop, f"problems: {bad[:5]}, degree-five cycles witt={witt} loop={loop}", t0)


def test_criterion_11_small_levels():
    t0 = time.perf_counter()
    low = AlgebraSpec("witt", -1)
    top = Chain.monomial(-1, 0, 1)
    rep = homology_dims(low, 0)
    ok = rep.dim_h(3) == 1 and graded_basis(low, 0, 3) == [(-1, 0, 1)] and not d(low, top)
    ok &= not graded_basis(low, 0, 4)  # nothing above, so the cycle is not a boundary
    ok &= d(low, Chain.monomial(-1, 1)) == Chain.monomial(0, coeff=2)
    zero = AlgebraSpec("witt", 0)
    h0 = homology_dims(zero, 0)
    ok &= h0.dim_h(0) == 1 and h0.dim_h(1) == 1 and graded_basis(zero, 0, 1) == [(0,)]
    ok &= all(s.dim_h == 0 for n in range(1, 17) for s in homology_dims(zero, n).slices)
    report(11, ok, "H(L(-1)) top class and H(L(0)) = Q + Q e0", t0)


def test_criterion_12_bijections():
    t0 = time.perf_counter()
    bad = []
    for n in range(31):
        for p in strict_partitions(n, 1):
            if psi(phi(p)) != p:
                bad.append(("phi", p))
    for k in (2, 3):
        source = Counter()
        for n in range(26):
            images = set()
            for x in enumerate_partitions("distinguished-nonsingular", k, n):
                y = lambda_map(x, k)
                q, h = x.reduced_dim, x.height
                if (y.degree, y.reduced_dim, y.height) != (n - q - h, q, h) or not y.is_nonsingular(k - 1):
                    bad.append(("lambda", x))
                if lambda_inverse(y, k) != x:
                    bad.append(("inverse", x))
                images.add(y)
                source[(q, h, n)] += 1
            if len(images) != len(enumerate_partitions("distinguished-nonsingular", k, n)):
                bad.append(("injective", k, n))
        for (q, h, n), count in source.items():
            m = n - q - h
            target = sum(1 for y in enumerate_partitions("distinguished-nonsingular", k - 1, m)
                         if y.reduced_dim == q and y.height == h) if m >= 0 else 0
            if target != count:
                bad.append(("count", k, q, h, n))
    worked = (
        frobenius((1, 2, 4, 5, 6, 8, 9)) == FrobeniusForm((2, 4, 7, 9), (1, 2, 4, 6))
        and phi((1, 2, 4, 5, 6, 8, 9)) == DP((3, 6, 11, 15), (3, 11, 15))
        and lambda_map(DP((3, 6, 11, 14, 17, 21), (11, 21)), 2) == DP((2, 5, 9, 13, 16, 19), (9, 13))
    )
    report(12, not bad and worked, f"problems: {bad[:5]}, worked examples={worked}", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
