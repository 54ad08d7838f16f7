from hypothesis import given
from hypothesis import strategies as st

from fhl.partitions import (
    DP,
    FrobeniusForm,
    binomial_main_count,
    compare,
    dominates,
    enumerate_partitions,
    frobenius,
    from_frobenius,
    index,
    is_main,
    is_nonsingular,
    lambda_inverse,
    lambda_map,
    main_partition_count,
    main_partitions_of_dim,
    normal_form,
    order_leq,
    phi,
    phi_main,
    psi,
    s_move,
    strict_count_check,
    strict_partitions,
    verify_series_identity,
)

strict_1 = st.integers(1, 30).flatmap(lambda n: st.sampled_from(list(strict_partitions(n, 1))))


def test_classification_examples():
    assert is_nonsingular((2, 6, 9), 1)
    assert is_main((1, 4, 7), 1) and is_main((2, 5, 8, 11), 1)
    assert is_main((2, 6, 9), 2)
    assert not is_main((3,), 1)


def test_normal_forms():
    nf = normal_form((2, 6, 9), 1)
    assert nf.main_part == (2,) and nf.dense_blocks == ((6, 9),) and index((2, 6, 9), 1) == 1
    nf = normal_form((2, 6, 9), 2)
    assert nf.main_part == (2, 6, 9) and nf.dense_blocks == () and index((2, 6, 9), 2) == 0
    nf = normal_form((3,), 1)
    assert nf.main_part == () and nf.dense_blocks == ((3,),)


def test_order_examples():
    assert compare(DP((1, 4, 5, 5), (5,)), (1, 2, 3, 4, 5), 1) == -1
    assert compare(DP((3, 5, 7), (5, 7)), DP((5, 5, 5), (5, 5)), 1) == -1
    assert compare(DP((1, 3, 5, 6), (6,)), DP((5, 5, 5), (5, 5)), 1) is None


def test_merge_chain():
    a = s_move(DP((1, 2, 3, 4, 5)), 1, 2)
    assert a == DP((1, 4, 5, 5), (5,))
    assert s_move(a, 0, 1) == DP((5, 5, 5), (5, 5))


def test_enumeration_at_three():
    assert sorted(enumerate_partitions("strict", 1, 3)) == [(1, 2), (3,)]
    assert enumerate_partitions("nonsingular", 1, 3) == [(3,)]


@given(st.integers(1, 6))
def test_main_partitions_of_level_one(q):
    assert set(main_partitions_of_dim(1, q)) == {tuple(r + 3 * i for i in range(q)) for r in (1, 2)}


@given(st.integers(1, 4), st.integers(1, 5))
def test_main_count_is_binomial(k, q):
    assert main_partition_count(k, q) == binomial_main_count(k, q)


@given(st.integers(2, 4), st.integers(1, 4))
def test_main_bijection_is_onto(k, q):
    images = list(phi_main(k, q).values())
    assert len(set(images)) == len(images)
    assert set(images) == set(main_partitions_of_dim(k, q))


def test_frobenius_of_worked_partition():
    assert frobenius((1, 2, 4, 5, 6, 8, 9)) == FrobeniusForm((2, 4, 7, 9), (1, 2, 4, 6))
    assert phi((1, 2, 4, 5, 6, 8, 9)) == DP((3, 6, 11, 15), (3, 11, 15))


def test_lambda_at_level_two():
    assert lambda_map(DP((3, 6, 11, 14, 17, 21), (11, 21)), 2) == DP((2, 5, 9, 13, 16, 19), (9, 13))


@given(st.integers(1, 25).flatmap(lambda n: st.sampled_from(list(strict_partitions(n, 1)) or [(n,)])))
def test_frobenius_round_trip(parts):
    assert from_frobenius(frobenius(parts)) == parts


@given(strict_1)
def test_phi_psi_round_trip(parts):
    d = phi(parts)
    assert d.is_nonsingular(1) and d.degree == sum(parts) and d.dim == len(parts)
    assert psi(d) == parts


@given(st.integers(2, 3), st.integers(1, 22))
def test_lambda_round_trip(k, n):
    for parts in enumerate_partitions("nonsingular", k, n):
        lead = normal_form(parts, k).dense_blocks
        for marks in ((), tuple(b[0] for b in lead)):
            d = DP(parts, marks)
            assert lambda_inverse(lambda_map(d, k), k) == d


@given(st.integers(1, 18).flatmap(lambda n: st.tuples(*[st.sampled_from(list(strict_partitions(n, 1)))] * 2)))
def test_unmarked_order_is_dominance(pair):
    a, b = pair
    if len(a) != len(b):
        assert order_leq(a, b, 1) is None
    else:
        assert order_leq(a, b, 1) == dominates(b, a)


@given(st.integers(1, 3), st.integers(0, 30))
def test_strict_count_against_nonsingular_weights(k, n):
    assert strict_count_check(k, n)


def test_series_identities():
    for k in (1, 2, 3):
        assert verify_series_identity("sylvester", k, 40)
        assert verify_series_identity("strict", k, 30)
        assert verify_series_identity("marked", k, 30)
