"""Betti numbers of the graded pieces, representing cocycles, and products.

Homology of ``C^{(n)}`` is computed from exact ranks of ``d`` and, for a
consistency check, of ``delta_k``; the two must agree since ``delta_k`` is
the adjoint of ``d``.

Ranks modulo a prime never exceed ranks over the field, so
``dim C_q - rank_p d_q - rank_p d_{q+1}`` bounds ``dim H_q`` from above.  When
that bound is zero it certifies both ranks exactly; only otherwise is exact
elimination over Q (or Q(w)) run.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .filtering import basis_change, chain_to_vector, expand_xi
from .liealg import AlgebraSpec, Chain, boundary_matrix, coboundary_matrix, d, graded_basis
from .partitions import (
    DistinguishedPartition,
    enumerate_partitions,
    is_main,
    main_partitions_of_dim,
    order_slice,
    strict_partitions,
)
from .qlinalg import SparseMatrix, rank, rank_mod_p, solve

__all__ = [
    "SliceHomology",
    "HomologyReport",
    "homology_dims",
    "betti",
    "rank_d",
    "binomial_check",
    "binomial_value",
    "cocycle_for_main",
    "is_coboundary",
    "classes_independent",
    "product_check",
    "homotopy_check",
]


@dataclass(frozen=True)
class SliceHomology:
    q: int
    dim_c: int
    rank_d: int  # rank of d : C_q -> C_{q-1}
    rank_delta: int  # rank of delta : C_q -> C_{q+1}
    dim_h: int
    main: tuple = ()

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "dimC": self.dim_c,
            "rank_d": self.rank_d,
            "rank_delta": self.rank_delta,
            "dimH": self.dim_h,
            "main": [list(p) for p in self.main],
        }


@dataclass(frozen=True)
class HomologyReport:
    family: str
    k: int
    n: int
    slices: tuple = field(default_factory=tuple)
    cocycles: dict = field(default_factory=dict)

    def dim_h(self, q: int) -> int:
        for s in self.slices:
            if s.q == q:
                return s.dim_h
        return 0

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "k": self.k,
            "n": self.n,
            "slices": [s.to_json() for s in self.slices],
        }
        if self.cocycles:
            out["cocycles"] = [
                {"partition": list(p), "chain": c.to_json()} for p, c in sorted(self.cocycles.items())
            ]
        return out

    def csv_rows(self) -> list:
        return [(self.n, s.q, s.dim_c, s.dim_h) for s in self.slices]


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "q", "dimC", "dimH"])
    for r in reports:
        w.writerows(r.csv_rows())
    return buf.getvalue()


def _dims_present(spec: AlgebraSpec, n: int) -> list:
    return sorted({len(p) for p in strict_partitions(n, spec.k)})


@lru_cache(maxsize=4096)
def _dim_c(spec: AlgebraSpec, n: int, q: int) -> int:
    return len(graded_basis(spec, n, q)) if q >= 0 else 0


@lru_cache(maxsize=4096)
def _rank_p(spec: AlgebraSpec, n: int, q: int) -> int:
    if q <= 0 or not _dim_c(spec, n, q) or not _dim_c(spec, n, q - 1):
        return 0
    return rank_mod_p(boundary_matrix(spec, n, q))


@lru_cache(maxsize=4096)
def _rank_exact(spec: AlgebraSpec, n: int, q: int) -> int:
    if q <= 0 or not _dim_c(spec, n, q) or not _dim_c(spec, n, q - 1):
        return 0
    return rank(boundary_matrix(spec, n, q))


def _certified(spec, n, q) -> bool:
    return _dim_c(spec, n, q) == _rank_p(spec, n, q) + _rank_p(spec, n, q + 1)


def rank_d(spec: AlgebraSpec, n: int, q: int) -> int:
    """Exact rank of ``d : C_q -> C_{q-1}`` in degree ``n``."""
    if _certified(spec, n, q) or _certified(spec, n, q - 1):
        return _rank_p(spec, n, q)
    return _rank_exact(spec, n, q)


def betti(spec: AlgebraSpec, n: int, q: int) -> int:
    """``dim H_q`` of the degree-``n`` piece from ranks of ``d`` only."""
    dim_c = _dim_c(spec, n, q)
    if not dim_c or _certified(spec, n, q):
        return 0
    return dim_c - rank_d(spec, n, q) - rank_d(spec, n, q + 1)


def homology_dims(spec: AlgebraSpec, n: int, qs=None) -> HomologyReport:
    """Betti numbers of ``C^{(n)}`` per dimension, computed from ``d`` and from ``delta``.

    ``qs`` restricts the dimensions reported (neighbouring ranks are still computed).
    The ``delta`` ranks are taken by exact elimination whenever the ``d``
    ranks needed it, so the two computations stay independent there.
    """
    present = _dims_present(spec, n)
    if qs is not None:
        present = [q for q in present if q in set(qs)]
    rank_delta = {}

    def rd(q):
        return rank_d(spec, n, q) if q > 0 else 0

    def rdel(q):
        if q < 0:
            return 0
        if q not in rank_delta:
            if _certified(spec, n, q) or _certified(spec, n, q + 1):
                m = coboundary_matrix(spec, n, q)
                rank_delta[q] = rank_mod_p(m) if m.entries else 0
            else:
                rank_delta[q] = rank(coboundary_matrix(spec, n, q))
        return rank_delta[q]

    slices = []
    for q in present:
        dim_c = _dim_c(spec, n, q)
        h_d = dim_c - rd(q) - rd(q + 1)
        h_delta = dim_c - rdel(q) - rdel(q - 1)
        if h_d != h_delta:
            raise ArithmeticError(f"d and delta disagree at n={n}, q={q}: {h_d} vs {h_delta}")
        main = ()
        if spec.k >= 1:
            main = tuple(enumerate_partitions("main", spec.k, n, q))
        slices.append(SliceHomology(q, dim_c, rd(q), rdel(q), h_d, main))
    return HomologyReport(spec.family, spec.k, n, tuple(slices))


def binomial_value(k: int, q: int) -> int:
    return comb(q + k - 1, k - 1) + comb(q + k - 2, k - 1)


def binomial_check(spec: AlgebraSpec, q: int) -> bool:
    """Total ``dim H^q`` over all degrees equals the binomial count of main partitions.

    A q-dimensional main k-partition has parts at most ``2k + 3(q-1)``, which
    bounds the degrees that need to be scanned.
    """
    if spec.k < 1 or q < 1:
        raise ValueError("binomial check needs k >= 1 and q >= 1")
    top = q * (2 * spec.k + 3 * (q - 1))
    lo = spec.k * q + q * (q - 1) // 2
    total = sum(betti(spec, n, q) for n in range(lo, top + 1))
    return total == binomial_value(spec.k, q)


# ---------------------------------------------------------------------------
# cocycles


def is_coboundary(spec: AlgebraSpec, c: Chain) -> bool:
    """Whether ``c`` (homogeneous) lies in the image of ``delta_k``."""
    if not c:
        return True
    (n,), (q,) = c.degrees(), c.dims()
    m = coboundary_matrix(spec, n, q - 1)
    rows = graded_basis(spec, n, q)
    return solve(m, chain_to_vector(c, rows)) is not None


def cocycle_for_main(spec: AlgebraSpec, main: tuple) -> Chain:
    """A cocycle ``e_{I0} + (xi-monomials strictly below I0)`` for a main partition ``I0``."""
    main = tuple(main)
    if spec.k < 1 or not is_main(main, spec.k):
        raise ValueError(f"{main} is not a main {spec.k}-partition")
    n, q = sum(main), len(main)
    lead = Chain.monomial(*main)
    if q == 0:
        return lead
    bc = basis_change(spec, n, q)
    top = DistinguishedPartition(main, ())
    order = order_slice(spec.k, n, q)
    lower = [s for s in bc.shapes if s != top and order.leq(s, top)]
    target_rows = graded_basis(spec, n, q + 1)
    dmat = coboundary_matrix(spec, n, q)
    cols = [bc.xi.column(bc.shapes.index(s)) for s in lower]
    # delta(lead + sum a_s xi_s) = 0
    system = SparseMatrix.from_columns(
        len(target_rows), [{i: v for i, v in enumerate(dmat.apply(col)) if v} for col in cols])
    rhs = [-v for v in dmat.apply(chain_to_vector(lead, list(bc.monomials)))]
    sol = solve(system, rhs)
    if sol is None:
        raise ArithmeticError(f"no cocycle with leading term e_{main}")
    out = lead
    for a, s in zip(sol, lower):
        if a:
            out = out + expand_xi(spec, s).scale(a)
    return out


def classes_independent(spec: AlgebraSpec, cocycles: list) -> bool:
    """Whether the given cocycles of one slice are independent modulo coboundaries."""
    if not cocycles:
        return True
    (n,), (q,) = set().union(*(c.degrees() for c in cocycles)), set().union(*(c.dims() for c in cocycles))
    rows = graded_basis(spec, n, q)
    image = coboundary_matrix(spec, n, q - 1) if q > 0 else SparseMatrix(len(rows), 0)
    base = rank(image)
    extra = SparseMatrix.from_columns(
        len(rows), [{i: v for i, v in enumerate(chain_to_vector(c, rows)) if v} for c in cocycles])
    return rank(image.hstack(extra)) == base + len(cocycles)


def product_check(spec: AlgebraSpec, nmax: int) -> bool:
    """For k in {1, 2}: every product of two representing cocycles of combined
    degree at most ``nmax`` is a coboundary."""
    if spec.k not in (1, 2):
        raise ValueError("product check is stated for k = 1, 2")
    reps = []
    q = 1
    while spec.k * q + q * (q - 1) // 2 <= nmax:
        for p in main_partitions_of_dim(spec.k, q):
            if sum(p) <= nmax:
                reps.append(cocycle_for_main(spec, p))
        q += 1
    for i, a in enumerate(reps):
        for b in reps[i:]:
            if _degree(a) + _degree(b) > nmax:
                continue
            if not is_coboundary(spec, a.wedge(b)):
                return False
    return True


def _degree(c: Chain) -> int:
    (n,) = c.degrees()
    return n


def homotopy_check(n: int) -> bool:
    """``(h d + d h) c = n c`` on ``C^{(n)}`` of the Witt algebra with k = -1, ``h = e_0 ^``."""
    spec = AlgebraSpec("witt", -1)
    e0 = Chain.monomial(0)
    for m in strict_partitions(n, -1):
        c = Chain.monomial(*m)
        lhs = e0.wedge(d(spec, c)) + d(spec, e0.wedge(c))
        if lhs != c.scale(n):
            return False
    return True
