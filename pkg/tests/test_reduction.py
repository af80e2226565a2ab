from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avoidset.reduction import (
    DeltaSystem,
    classify_good_tsets,
    delta_system_search,
    find_delta_system,
    lemma_2_3_audit,
    pack_disjoint,
    partition_for_induction,
    reduce_to_cross_intersecting,
    reduction_tset_bound,
)
from avoidset.sampling import random_cross_avoiding_pair, random_uniform_cross_avoiding_pair
from avoidset.setcore import (
    AllowedSet,
    Family,
    PreconditionError,
    make_family,
    power_set,
    satisfies_cross,
    subfamily_containing,
    uniform_family,
)


def fam(n, *sets):
    return make_family(n, [list(s) for s in sets])


def edges(n, vertices):
    return make_family(n, [list(e) for e in combinations(vertices, 2)])


class TestDeltaSystem:
    def test_star(self):
        system = find_delta_system(fam(4, [1, 2], [1, 3], [1, 4]), 0b1, 3)
        assert system.petals == (0b0011, 0b0101, 0b1001)

    def test_too_few_through_core(self):
        assert find_delta_system(fam(3, [1, 2], [1, 3], [2, 3]), 0b1, 3) is None

    def test_pairs_over_six(self):
        system = find_delta_system(uniform_family(6, 3), 0b11, 4)
        assert sorted(system.petals) == [0b000111, 0b001011, 0b010011, 0b100011]
        assert system.verify()

    def test_core_itself_is_a_petal(self):
        F = fam(4, [1, 2], [1, 2, 3], [1, 2, 4])
        system = find_delta_system(F, 0b11, 3)
        assert system is not None and 0b11 in system.petals

    def test_size_one(self):
        assert find_delta_system(fam(3, [1, 2]), 0b1, 1).petals == (0b11,)
        with pytest.raises(PreconditionError):
            find_delta_system(fam(3, [1, 2]), 0b1, 0)

    def test_budget_fallback_is_flagged(self):
        # greedy can under-report but never claim a packing that fails to verify
        res = pack_disjoint([0b0011, 0b0110, 0b1100, 0b1001], 2, node_cap=1)
        assert not res.exact
        assert len(res.chosen) in (0, 2)

    @settings(max_examples=80)
    @given(
        st.integers(3, 8).flatmap(
            lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=15), st.integers(0, (1 << n) - 1), st.integers(1, 4))
        )
    )
    def test_agrees_with_brute_force(self, case):
        n, masks, T, s = case
        F = Family.from_masks(n, masks)
        system, exact = delta_system_search(F, T, s)
        through = subfamily_containing(F, T).masks()
        brute = any(
            all((p & q) == T for p, q in combinations(choice, 2)) for choice in combinations(through, s)
        )
        assert exact
        assert (system is not None) == brute
        if system is not None:
            assert system.verify() and system.core == T and len(system.petals) == s

    def test_invariant_check(self):
        assert not DeltaSystem(0b1, (0b011, 0b111)).verify()
        assert not DeltaSystem(0b1, (0b010,)).verify()


class TestGoodSets:
    def test_k4_vertices_good(self):
        K4 = edges(8, range(1, 5))
        report = classify_good_tsets(K4, Family.empty(8), 1, 2)
        assert report.good_for_A == (0b1, 0b10, 0b100, 0b1000)

    def test_star_core_good(self):
        A = fam(7, [1, 2, 3], [1, 4, 5], [1, 6, 7])
        report = classify_good_tsets(A, Family.empty(7), 1, 3)
        assert 0b1 in report.good_for_A

    def test_non_uniform_rejected(self):
        with pytest.raises(PreconditionError):
            classify_good_tsets(fam(4, [1], [1, 2]), Family.empty(4), 1, 2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_good_side_blocks_other(self, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(2, 5))
        t = int(rng.integers(1, r))
        n = int(rng.integers(r + 1, 10))
        A, B = random_uniform_cross_avoiding_pair(rng, n, r, t)
        report = classify_good_tsets(A, B, t, r)
        assert not set(report.good_for_A) & set(report.good_for_B)
        for T in report.good_for_A:
            assert len(subfamily_containing(B, T)) == 0


class TestReduce:
    def test_two_blocks(self):
        A, B = edges(8, range(1, 5)), edges(8, range(5, 9))
        rep = reduce_to_cross_intersecting(A, B, 1, 2)
        assert rep.bad_tsets == ()
        assert len(rep.A0) == len(rep.B0) == 0
        assert rep.A_prime == A and rep.B_prime == B

    def test_crude_at_tiny_scale(self):
        rep = reduce_to_cross_intersecting(fam(5, [1, 2], [1, 3]), fam(5, [4, 5]), 1, 2)
        assert 0b10 in rep.bad_tsets and 0b100 in rep.bad_tsets
        assert rep.A0 == fam(5, [1, 2], [1, 3])
        assert len(rep.A_prime) == 0

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            reduce_to_cross_intersecting(fam(4, [1, 2]), fam(4, [2, 3]), 1, 2)

    def test_bound_formula(self):
        assert reduction_tset_bound(10, 3, 1) == 2**4 * 10
        assert reduction_tset_bound(10, 3, 2) == 2 * 1
        assert reduction_tset_bound(10, 3, 3) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_postconditions(self, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(2, 5))
        t = int(rng.integers(1, r))
        n = int(rng.integers(r + 1, 11))
        A, B = random_uniform_cross_avoiding_pair(rng, n, r, t)
        rep = reduce_to_cross_intersecting(A, B, t, r)
        assert satisfies_cross(rep.A_prime, rep.B_prime, AllowedSet(range(t)))
        assert rep.A_prime == A.difference(rep.A0) and rep.B_prime == B.difference(rep.B0)
        assert len(rep.A0) <= len(rep.bad_tsets) * rep.per_tset_bound
        assert rep.bound_ok


class TestPartition:
    def test_hand_trace(self):
        part = partition_for_induction(power_set(2), fam(2, []), 1)
        assert part.A_n == fam(2, [2], [1, 2])
        assert part.A_star == part.A_n
        assert len(part.A_tplus1) == 0 and len(part.X_rest) == 0
        assert part.B_0 == fam(2, [])
        assert len(part.B_n) == len(part.B_star) == len(part.B_tplus1) == len(part.Y_rest) == 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_partition_random(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 9))
        t = int(rng.integers(1, min(3, n) + 1))
        A, B = random_cross_avoiding_pair(rng, n, t)
        part = partition_for_induction(A, B, t)
        assert len(part.A_star.intersection(part.A_tplus1)) == 0
        pieces = [part.A_0, part.A_star, part.A_tplus1, part.X_rest]
        assert sum(map(len, pieces)) == len(A)
        assert pieces[0].union(pieces[1]).union(pieces[2]).union(pieces[3]) == A


class TestAudit:
    def test_tight_hand_example(self):
        audit = lemma_2_3_audit(power_set(2), fam(2, []), 1)
        assert (audit.lhs, audit.rhs) == (4, 4)
        assert audit.claims_ok and audit.inequality_ok

    def test_empty(self):
        audit = lemma_2_3_audit(Family.empty(4), power_set(4), 2)
        assert audit.lhs == audit.rhs == 0

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            lemma_2_3_audit(fam(3, [1]), fam(3, [1]), 1)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_inequality_random(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 11))
        t = int(rng.integers(1, min(3, n) + 1))
        A, B = random_cross_avoiding_pair(rng, n, t)
        audit = lemma_2_3_audit(A, B, t)
        assert audit.claims_ok
        assert audit.lhs >= audit.rhs
