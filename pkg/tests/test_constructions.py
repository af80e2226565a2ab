import warnings
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avoidset.constructions import (
    BoundaryParameterWarning,
    DegenerateConstructionWarning,
    cross_avoiding_star_pair,
    frankl_furedi_disjoint_pairs,
    frankl_furedi_family,
    katona_degenerate,
    katona_family,
    level_family,
    powerset_pair,
    star_family,
    star_family_size,
    star_pair_disjoint_pairs,
)
from avoidset.dpcount import count_disjoint, count_disjoint_unordered, intersection_profile
from avoidset.setcore import (
    AllowedSet,
    AvoidOne,
    Convention,
    PreconditionError,
    ValidationError,
    make_family,
    power_set,
    satisfies_cross,
    satisfies_single,
)


def test_level_family():
    assert level_family(3, 0).sets() == [[]]
    assert len(level_family(3, 1)) == 4
    assert level_family(4, 4) == power_set(4)
    with pytest.raises(ValidationError):
        level_family(3, 4)


class TestKatona:
    def test_odd_case(self):
        F = katona_family(4, 1)
        assert len(F) == 5
        assert all(len(s) >= 3 for s in F.sets())

    def test_even_case_drops_element_one(self):
        assert katona_family(4, 2) == make_family(4, [[2, 3, 4], [1, 2, 3, 4]])

    def test_degenerate_is_empty_and_flagged(self):
        assert katona_degenerate(1, 1)
        with pytest.warns(DegenerateConstructionWarning):
            F = katona_family(1, 1)
        assert len(F) == 0

    def test_degenerate_only_when_t_equals_n_even(self):
        for n in range(1, 12):
            for t in range(0, n + 1):
                assert katona_degenerate(n, t) == ((n + t) % 2 == 0 and t == n)


class TestFranklFuredi:
    def test_examples(self):
        F = frankl_furedi_family(4, 2)
        assert len(F) == 7
        assert F == make_family(4, [[], [1], [2], [3], [4], [2, 3, 4], [1, 2, 3, 4]])
        assert frankl_furedi_family(2, 1) == make_family(2, [[], [1, 2]])

    def test_t_avoiding_distinct(self):
        for n in range(1, 13):
            for t in range(1, n + 1):
                assert satisfies_single(frankl_furedi_family(n, t), AvoidOne(t), Convention.DISTINCT), (n, t)

    @pytest.mark.parametrize("n", range(13, 17))
    def test_t_avoiding_distinct_larger(self, n):
        # pair counts by intersection size; the diagonal is removed for distinct pairs
        for t in range(1, n + 1):
            F = frankl_furedi_family(n, t)
            profile = intersection_profile(F, F)
            profile -= np.bincount(F.sizes().astype(np.int64), minlength=n + 1)
            assert profile[t] == 0, (n, t)

    def test_closed_form_disjoint_pairs(self):
        for n in range(1, 14):
            for t in range(1, n + 1):
                assert frankl_furedi_disjoint_pairs(n, t) == count_disjoint_unordered(frankl_furedi_family(n, t)), (n, t)


class TestStar:
    def test_examples(self):
        X = 0b0011
        assert star_family(4, 2, X, 0) == make_family(4, [[1, 2]])
        F = star_family(4, 2, X, 1)
        assert len(F) == 5 and [3, 4] not in F.sets()
        assert len(star_family(4, 2, X, 2)) == 6

    def test_boundary_warns(self):
        with pytest.warns(BoundaryParameterWarning):
            star_family(4, 2, 0, 1)
        with pytest.warns(BoundaryParameterWarning):
            star_family(4, 2, 0b1111, 0)

    @given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n), st.integers(0, (1 << n) - 1), st.integers(0, 4))))
    def test_size_closed_form(self, case):
        n, r, X, s = case
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundaryParameterWarning)
            F = star_family(n, r, X, s)
        assert len(F) == star_family_size(n, r, bin(X).count("1"), s)


class TestStarPair:
    def test_blocks(self):
        A, B = cross_avoiding_star_pair(6, 2, 1, 0b000111, 0, 0)
        assert len(A) == len(B) == 3
        assert satisfies_cross(A, B, AllowedSet({0}))

    def test_two_level(self):
        A, B = cross_avoiding_star_pair(6, 3, 2, 0b000111, 1, 0)
        assert satisfies_cross(A, B, AllowedSet({0, 1}))

    def test_rejects_large_offsets(self):
        with pytest.raises(PreconditionError):
            cross_avoiding_star_pair(6, 3, 2, 0b111, 1, 1)
        with pytest.raises(PreconditionError):
            cross_avoiding_star_pair(6, 2, 3, 0b111, 0, 0)

    @settings(max_examples=60)
    @given(
        st.integers(2, 12).flatmap(
            lambda n: st.integers(1, n).flatmap(
                lambda r: st.integers(1, r).flatmap(
                    lambda t: st.integers(0, t - 1).flatmap(
                        lambda a: st.tuples(
                            st.just(n), st.just(r), st.just(t), st.integers(1, (1 << n) - 2), st.just(a), st.integers(0, t - 1 - a)
                        )
                    )
                )
            )
        )
    )
    def test_always_cross_avoiding_and_closed_form(self, case):
        n, r, t, X, a, b = case
        A, B = cross_avoiding_star_pair(n, r, t, X, a, b)
        assert satisfies_cross(A, B, AvoidOne(t))
        assert count_disjoint(A, B) == star_pair_disjoint_pairs(n, r, bin(X).count("1"), a, b)


class TestPowersetPair:
    def test_example(self):
        A, B = powerset_pair(2, 0b01)
        assert A.sets() == [[], [1]] and B.sets() == [[], [2]]
        A, B = powerset_pair(5, 0)
        assert A.sets() == [[]] and B == power_set(5)

    @given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
    def test_attains_f_n_1(self, case):
        n, S = case
        A, B = powerset_pair(n, S)
        assert satisfies_cross(A, B, AvoidOne(1))
        assert count_disjoint(A, B) == 2**n == len(A) * len(B)


def test_level_disjoint_pairs_small():
    # [3]^(<=1): empty set with 3 singletons, plus 3 singleton pairs
    assert count_disjoint_unordered(level_family(3, 1)) == 6
    assert count_disjoint_unordered(level_family(5, 1)) == 5 + comb(5, 2)
