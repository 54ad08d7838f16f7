import pytest
from hypothesis import given
from hypothesis import strategies as st

from fhl.qlinalg import (
    OMEGA,
    SparseMatrix,
    generalized_eigenspace_dim,
    inverse,
    kernel_basis,
    rank,
    rank_mod_p,
    rref,
    solve,
)

small = st.integers(-4, 4)
fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def dense(draw_vals, r, c):
    return st.lists(st.lists(draw_vals, min_size=c, max_size=c), min_size=r, max_size=r)


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(lambda c: dense(fracs, r, c)))


def test_rref_of_rank_one_block():
    red, pivots = rref(SparseMatrix.from_dense([[1, 2], [2, 4]]))
    assert red.to_dense() == [[1, 2], [0, 0]]
    assert list(pivots) == [0]


def test_kernel_of_rank_one_block():
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0


def test_inconsistent_system_has_no_solution():
    assert solve(SparseMatrix.from_dense([[1, 2], [2, 4]]), [1, 3]) is None


def test_jordan_block_generalized_eigenspace():
    assert generalized_eigenspace_dim(SparseMatrix.from_dense([[1, 1], [0, 1]]), 1, 2) == 2


def test_omega_is_a_primitive_cube_root():
    assert OMEGA * OMEGA * OMEGA == 1
    assert OMEGA * OMEGA + OMEGA + 1 == 0


@given(matrices)
def test_rank_nullity(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@given(matrices)
def test_rank_of_transpose(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == rank(m.transpose())


@given(matrices, st.lists(fracs, min_size=6, max_size=6))
def test_solve_reproduces_consistent_rhs(rows, x):
    m = SparseMatrix.from_dense(rows)
    rhs = m.apply(x[: m.ncols])
    sol = solve(m, rhs)
    assert sol is not None and m.apply(sol) == rhs


@given(st.integers(1, 5).flatmap(lambda n: dense(small, n, n)))
def test_inverse_round_trip(rows):
    m = SparseMatrix.from_dense(rows)
    if rank(m) < m.nrows:
        with pytest.raises(ArithmeticError):
            inverse(m)
        return
    assert (inverse(m) @ m).to_dense() == SparseMatrix.identity(m.nrows).to_dense()


@given(matrices)
def test_modular_rank_never_exceeds_exact_rank(rows):
    m = SparseMatrix.from_dense(rows)
    try:
        rp = rank_mod_p(m)
    except ZeroDivisionError:
        return
    assert rp <= rank(m)


@given(st.integers(1, 5).flatmap(lambda r: dense(small, r, r + 1)))
def test_modular_rank_matches_on_small_integers(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank_mod_p(m) == rank(m)


def test_modular_rank_over_cyclotomic_field():
    w = OMEGA
    m = SparseMatrix.from_dense([[1, w], [w, w * w], [w * 2, w * w * 2], [1, w * w]])
    assert rank_mod_p(m) == rank(m) == 2
