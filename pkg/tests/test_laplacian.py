import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhl.cohomology import homology_dims
from fhl.liealg import AlgebraSpec, Chain, inner
from fhl.laplacian import (
    EigenvalueCollision,
    closed_form_spectrum,
    commutation_check,
    eigenvector,
    energy,
    energy0,
    energy_partial_sums,
    f_diagonal,
    gamma,
    gamma_matrix,
    harmonic_basis,
    second_order_check,
    spectrum,
    tau_triangularity_violations,
    trace_identity,
)
from fhl.partitions import DP, enumerate_partitions, strict_partitions

WITT1 = AlgebraSpec("witt", 1)
WITT0 = AlgebraSpec("witt", 0)
increasing = st.lists(st.integers(0, 20), max_size=5, unique=True).map(sorted)


def test_degree_three_is_identity():
    for c in (Chain.monomial(3), Chain.monomial(1, 2)):
        assert gamma(WITT1, c) == c
    assert spectrum(WITT1, 3).eigen == ((1, 2),)


def test_closed_form_values():
    assert energy((3,)) == 1
    assert energy((1, 2)) == -2
    assert energy0((1,)) == 1
    assert f_diagonal((1, 2)) == 1
    for r in (1, 2):
        for q in range(1, 6):
            assert energy(tuple(r + 3 * i for i in range(q))) == 0


@given(increasing)
def test_tail_sum_form_of_energy(parts):
    assert energy_partial_sums(parts) == energy(parts)


@given(st.integers(1, 16))
def test_diagonal_entries(n):
    for q in range(1, 5):
        g = gamma_matrix(WITT1, n, q)
        for i, p in enumerate(strict_partitions(n, 1, q)):
            assert g[i, i] == f_diagonal(p)


@pytest.mark.parametrize("n", range(0, 17))
def test_level_one_spectrum_matches_closed_form(n):
    rep = spectrum(WITT1, n)
    assert dict(rep.eigen) == closed_form_spectrum(1, n)
    assert rep.harmonic_dim == len(enumerate_partitions("main", 1, n))


@pytest.mark.parametrize("n", range(0, 11))
def test_level_zero_spectrum(n):
    rep = spectrum(WITT0, n)
    assert dict(rep.eigen) == closed_form_spectrum(0, n)
    # in degree 0 the constant and e_0 are harmonic; nothing else is
    assert rep.harmonic_dim == (2 if n == 0 else 0)


@given(st.integers(0, 22))
def test_trace_identity(n):
    assert trace_identity(n)


@given(st.integers(1, 14))
def test_tau_basis_triangular(n):
    assert not tau_triangularity_violations(n)


@pytest.mark.parametrize("spec", [WITT1, AlgebraSpec("loop", 1), AlgebraSpec("witt", 2)], ids=str)
def test_structural_identities(spec):
    assert second_order_check(spec, nmax=10, qmax=3)
    assert all(commutation_check(spec, n) for n in range(12))


def test_eigenvector_of_single_part():
    assert eigenvector(WITT1, DP((3,), ())) == Chain.monomial(3)


@pytest.mark.parametrize("n", range(1, 13))
def test_eigenvectors_are_orthogonal(n):
    vecs = []
    for shape in enumerate_partitions("distinguished-nonsingular", 1, n):
        try:
            v = eigenvector(WITT1, shape)
        except EigenvalueCollision:
            continue
        lam = energy(shape.base)
        assert gamma(WITT1, v) == v.scale(lam)
        vecs.append((lam, shape.dim, v))
    for i, (la, qa, a) in enumerate(vecs):
        for lb, qb, b in vecs[i + 1:]:
            if la != lb and qa == qb:
                assert inner(a, b) == 0


def test_collision_is_reported():
    with pytest.raises(EigenvalueCollision) as info:
        eigenvector(WITT1, DP((3, 9), (9,)))
    assert info.value.basis


@pytest.mark.parametrize("n", range(1, 15))
def test_harmonic_basis_spans_homology(n):
    harm = harmonic_basis(WITT1, n)
    assert all(not gamma(WITT1, h) for h in harm)
    assert len(harm) == sum(s.dim_h for s in homology_dims(WITT1, n).slices)


def test_brute_force_other_families():
    for spec in (AlgebraSpec("loop", 1), AlgebraSpec("witt", 2)):
        for n in range(1, 12):
            rep = spectrum(spec, n)
            assert rep.method == "charpoly"
            assert rep.harmonic_dim == sum(s.dim_h for s in homology_dims(spec, n).slices)
