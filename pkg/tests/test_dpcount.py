import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avoidset.dpcount import (
    count_disjoint,
    count_disjoint_fast,
    count_disjoint_indicator,
    count_disjoint_ordered,
    count_disjoint_sparse,
    count_disjoint_unordered,
    count_with_table,
    intersection_profile,
    subset_count_table,
    transform_cap,
)
from avoidset.setcore import CapacityError, Family, make_family, power_set, uniform_family

from oracles import d_pair, d_single, subsets


def pairs(max_n=10):
    def build(n):
        masks = st.lists(st.integers(0, (1 << n) - 1), max_size=40)
        return st.tuples(masks, masks).map(lambda ab: (Family.from_masks(n, ab[0]), Family.from_masks(n, ab[1])))

    return st.integers(1, max_n).flatmap(build)


def as_sets(F):
    return [frozenset(s) for s in F.sets()]


def test_ordered_examples():
    assert count_disjoint_ordered(make_family(2, [[]]), power_set(2)) == 4
    assert count_disjoint_ordered(power_set(2, 0b01), power_set(2, 0b10)) == 4
    assert count_disjoint_ordered(power_set(2), power_set(2)) == 9


def test_fast_examples():
    assert count_disjoint_fast(make_family(2, [[1]]), power_set(2)) == 2
    singletons = uniform_family(5, 1)
    assert count_disjoint_fast(singletons, singletons) == 20


def test_unordered_examples():
    assert count_disjoint_unordered(power_set(2)) == 4
    assert count_disjoint_unordered(make_family(2, [[], [1], [2]])) == 3
    assert count_disjoint_unordered(make_family(3, [[1], [2, 3]])) == 1


@given(pairs())
def test_all_routes_agree_with_oracle(ab):
    A, B = ab
    expected = d_pair(as_sets(A), as_sets(B))
    assert count_disjoint_ordered(A, B) == expected
    assert count_disjoint_fast(A, B) == expected
    assert count_disjoint_sparse(A, B) == expected
    assert count_disjoint(A, B) == expected


@given(pairs())
def test_symmetry_and_trivial_bound(ab):
    A, B = ab
    d = count_disjoint_ordered(A, B)
    assert d == count_disjoint_ordered(B, A)
    assert d <= len(A) * len(B)


@given(pairs(), st.integers(0, 1023))
def test_monotone_in_B(ab, extra):
    A, B = ab
    extra &= (1 << B.n) - 1
    bigger = B.union(Family.from_masks(B.n, [extra]))
    assert count_disjoint_ordered(A, bigger) >= count_disjoint_ordered(A, B)


@given(pairs())
def test_unordered_integrality(ab):
    F = ab[0]
    assert 2 * count_disjoint_unordered(F) + (0 in F) == count_disjoint_ordered(F, F)
    assert count_disjoint_unordered(F) == d_single(as_sets(F))


def test_indicator_route():
    n = 4
    rng = np.random.default_rng(3)
    a = rng.integers(0, 2, 1 << n)
    b = rng.integers(0, 2, 1 << n)
    A = Family.from_masks(n, np.flatnonzero(a))
    B = Family.from_masks(n, np.flatnonzero(b))
    assert count_disjoint_indicator(a, b, n) == count_disjoint_ordered(A, B)


def test_precomputed_table_reused():
    B = power_set(5, 0b10110)
    table = subset_count_table(B)
    for S in (0, 0b1, 0b11111):
        A = power_set(5, S)
        assert count_with_table(A, table) == count_disjoint_ordered(A, B)


def test_capacity_error_points_elsewhere():
    A = make_family(30, [[1]])
    with pytest.raises(CapacityError, match="count_disjoint_ordered"):
        count_disjoint_fast(A, A)
    assert count_disjoint(A, A) == 0


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("AVOIDSET_MAX_N", "3")
    assert transform_cap() == 3
    with pytest.raises(CapacityError):
        count_disjoint_fast(power_set(4), power_set(4))
    monkeypatch.setenv("AVOIDSET_MAX_N", "lots")
    with pytest.raises(CapacityError):
        transform_cap()


def test_sparse_large_universe():
    # closed form for two disjoint blocks of level sets: every cross pair is disjoint
    A = Family.from_masks(40, [1 << i for i in range(20)])
    B = Family.from_masks(40, [1 << i for i in range(20, 40)])
    assert count_disjoint_sparse(A, B) == 400
    assert count_disjoint_ordered(A, B) == 400


@settings(max_examples=25)
@given(st.integers(1, 4))
def test_power_set_self_count(n):
    # every ordered disjoint pair is a 3-colouring of [n]
    assert count_disjoint_ordered(power_set(n), power_set(n)) == 3**n
    assert d_pair(subsets(range(1, n + 1)), subsets(range(1, n + 1))) == 3**n


@given(pairs(8))
def test_intersection_profile_matches_brute(ab):
    A, B = ab
    expected = np.zeros(A.n + 1, dtype=np.int64)
    for a in as_sets(A):
        for b in as_sets(B):
            expected[len(a & b)] += 1
    profile = intersection_profile(A, B)
    assert profile.tolist() == expected.tolist()
    assert profile[0] == count_disjoint_ordered(A, B)
