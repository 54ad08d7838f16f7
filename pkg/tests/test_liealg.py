import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhl.liealg import (
    AlgebraSpec,
    Chain,
    bracket_h,
    d,
    delta,
    delta_e,
    graded_basis,
    inner,
    mu,
    sigma_conj_pow,
    sigma_pow,
)
from fhl.partitions import strict_partitions
from fhl.qlinalg import OMEGA

WITT1 = AlgebraSpec("witt", 1)
LOOP1 = AlgebraSpec("loop", 1)

specs = st.builds(AlgebraSpec, st.sampled_from(["witt", "loop"]), st.integers(1, 3))


@st.composite
def slice_chains(draw, spec, n_max=14):
    """A homogeneous chain in a random nonempty slice of ``spec``."""
    n = draw(st.integers(spec.k, n_max))
    dims = sorted({len(p) for p in strict_partitions(n, spec.k)} - {0})
    q = draw(st.sampled_from(dims))
    basis = graded_basis(spec, n, q)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    return Chain({m: c for m, c in zip(basis, coeffs) if c})


@st.composite
def spec_and_chain(draw):
    spec = draw(specs)
    return spec, draw(slice_chains(spec))


def test_structure_constants():
    assert mu(WITT1, 3) == 3
    assert mu(LOOP1, 3) == 0
    assert mu(LOOP1, -4) == -1
    assert bracket_h(0, 1, OMEGA) == 1
    assert bracket_h(0, 3, OMEGA) == 0
    assert bracket_h(2, 7, 1) == 5


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_root_of_unity_bracket_is_the_loop_bracket(a, b):
    assert bracket_h(a, b, OMEGA) == mu(LOOP1, b - a)


def test_small_boundaries():
    assert d(AlgebraSpec("witt", -1), Chain.monomial(-1, 1)) == Chain.monomial(0, coeff=2)
    cycle = Chain.monomial(1, 4) - Chain.monomial(2, 3, coeff=3)
    assert not d(WITT1, cycle)
    assert delta_e(WITT1, 3) == Chain.monomial(1, 2)
    assert delta_e(LOOP1, 3) == Chain.monomial(1, 2)


def test_monomials_are_orthonormal():
    assert inner(Chain.monomial(1, 4), Chain.monomial(1, 4)) == 1
    assert inner(Chain.monomial(1, 4), Chain.monomial(2, 3)) == 0
    assert inner(d(WITT1, Chain.monomial(1, 2)), Chain.monomial(3)) == 1
    assert inner(Chain.monomial(1, 2), delta(WITT1, Chain.monomial(3))) == 1


def test_graded_basis_at_three():
    assert graded_basis(WITT1, 3, 1) == [(3,)]
    assert graded_basis(WITT1, 3, 2) == [(1, 2)]


@given(spec_and_chain())
def test_boundary_squares_to_zero(sc):
    spec, c = sc
    assert not d(spec, d(spec, c))
    assert not delta(spec, delta(spec, c))


@given(st.data())
def test_coboundary_is_adjoint_of_boundary(data):
    spec = data.draw(specs)
    x = data.draw(slice_chains(spec))
    if not x:
        return
    (n,), (q,) = x.degrees(), x.dims()
    basis = graded_basis(spec, n, q + 1)
    y = Chain({m: data.draw(st.integers(-2, 2)) for m in basis})
    assert inner(d(spec, y), x) == inner(y, delta(spec, x))


@given(spec_and_chain(), st.integers(0, 4))
def test_shift_adjoint(sc, r):
    spec, x = sc
    y = sigma_pow(x, r)
    z = Chain({k: 1 for k in y.support()} | {tuple(i + 1 for i in k): 2 for k in x.support()})
    assert inner(sigma_pow(x, r), z) == inner(x, sigma_conj_pow(spec, z, r))


@given(spec_and_chain())
def test_json_round_trip(sc):
    _, c = sc
    assert Chain.from_json(c.to_json()) == c


@given(st.lists(st.integers(0, 9), min_size=1, max_size=4), st.lists(st.integers(0, 9), min_size=1, max_size=4))
def test_wedge_is_graded_commutative(a, b):
    x = Chain.monomial(*sorted(set(a)))
    y = Chain.monomial(*sorted(set(b)))
    sign = (-1) ** (len(set(a)) * len(set(b)))
    assert x.wedge(y) == y.wedge(x).scale(sign)


def test_invalid_family():
    with pytest.raises(ValueError):
        AlgebraSpec("virasoro", 1)
    with pytest.raises(ValueError):
        AlgebraSpec("witt", -2)
