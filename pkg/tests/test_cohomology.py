import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhl.cohomology import (
    betti,
    binomial_check,
    binomial_value,
    classes_independent,
    cocycle_for_main,
    homology_dims,
    homotopy_check,
    is_coboundary,
    product_check,
    rank_d,
    to_csv,
)
from fhl.liealg import AlgebraSpec, Chain, boundary_matrix, delta
from fhl.partitions import enumerate_partitions, main_partitions_of_dim
from fhl.qlinalg import rank

WITT1 = AlgebraSpec("witt", 1)
specs = st.builds(AlgebraSpec, st.sampled_from(["witt", "loop"]), st.integers(1, 3))


def test_first_degree():
    assert homology_dims(WITT1, 1).dim_h(1) == 1


def test_level_minus_one_top_class():
    rep = homology_dims(AlgebraSpec("witt", -1), 0)
    assert rep.dim_h(3) == 1
    top = Chain.monomial(-1, 0, 1)
    assert not delta(AlgebraSpec("witt", -1), top)
    assert not is_coboundary(AlgebraSpec("witt", -1), top)


def test_level_zero_only_e0():
    spec = AlgebraSpec("witt", 0)
    assert homology_dims(spec, 0).dim_h(1) == 1
    for n in range(1, 13):
        assert all(s.dim_h == 0 for s in homology_dims(spec, n).slices)


@given(st.integers(1, 14))
def test_contracting_homotopy(n):
    assert homotopy_check(n)


def test_binomial_values():
    assert all(binomial_value(1, q) == 2 for q in range(1, 8))
    assert binomial_value(2, 2) == 5 == len(main_partitions_of_dim(2, 2))


@given(specs, st.integers(1, 18))
def test_betti_counts_main_partitions(spec, n):
    rep = homology_dims(spec, n)
    for s in rep.slices:
        assert s.dim_h == len(enumerate_partitions("main", spec.k, n, s.q)) == betti(spec, n, s.q)


@given(specs, st.integers(1, 16), st.integers(1, 4))
def test_certified_rank_is_exact(spec, n, q):
    assert rank_d(spec, n, q) == rank(boundary_matrix(spec, n, q))


@pytest.mark.parametrize("family", ["witt", "loop"])
@pytest.mark.parametrize("k,q", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_binomial_totals(family, k, q):
    assert binomial_check(AlgebraSpec(family, k), q)


@pytest.mark.parametrize("family", ["witt", "loop"])
@pytest.mark.parametrize("k", [1, 2])
def test_main_cocycles_independent(family, k):
    spec = AlgebraSpec(family, k)
    for n in range(1, 17):
        for q in range(1, 5):
            mains = enumerate_partitions("main", k, n, q)
            cocycles = [cocycle_for_main(spec, m) for m in mains]
            assert all(not delta(spec, c) for c in cocycles)
            assert classes_independent(spec, cocycles)


def test_main_cocycle_in_degree_five():
    c = cocycle_for_main(WITT1, (1, 4))
    assert c.coeff((1, 4)) == 1
    assert not delta(WITT1, c)
    assert classes_independent(WITT1, [c])


def test_products_vanish_at_level_one():
    a, b = cocycle_for_main(WITT1, (1,)), cocycle_for_main(WITT1, (2,))
    assert is_coboundary(WITT1, a.wedge(b))
    assert product_check(WITT1, 16)
    assert product_check(AlgebraSpec("loop", 1), 16)


def test_products_at_level_two():
    assert product_check(AlgebraSpec("loop", 2), 16)
    # e_3 ^ e_4 is closed but not exact for the Witt algebra at k = 2
    spec = AlgebraSpec("witt", 2)
    e3, e4 = cocycle_for_main(spec, (3,)), cocycle_for_main(spec, (4,))
    assert not delta(spec, e3.wedge(e4))
    assert not is_coboundary(spec, e3.wedge(e4))
    assert not product_check(spec, 16)


def test_csv_rows():
    text = to_csv([homology_dims(WITT1, n) for n in (1, 2)])
    assert text.splitlines() == ["n,q,dimC,dimH", "1,1,1,1", "2,1,1,1"]
