import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avoidset.setcore import (
    AllowedSet,
    AvoidOne,
    Convention,
    Family,
    UniverseRangeError,
    ValidationError,
    complement,
    delete_top,
    format_family,
    intersection_size,
    join,
    make_family,
    mask_from_elements,
    parse_family,
    power_set,
    satisfies_cross,
    satisfies_single,
    subfamily_containing,
    uniform_family,
)


def fam(n, *sets):
    return make_family(n, [list(s) for s in sets])


def families(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=20).map(lambda ms: Family.from_masks(n, ms))
    )


def constraints(n_max=6):
    return st.one_of(
        st.integers(0, n_max).map(AvoidOne),
        st.frozensets(st.integers(0, n_max)).map(AllowedSet),
    )


class TestMakeFamily:
    def test_dedup_and_sort(self):
        F = fam(2, [1], [], [1])
        assert F.sets() == [[], [1]]

    def test_numeric_mask_order(self):
        assert fam(3, [1, 2], [3]).sets() == [[1, 2], [3]]
        assert fam(3, [3], [1, 2]).masks() == [3, 4]

    def test_out_of_range_names_the_set(self):
        with pytest.raises(ValidationError, match="3"):
            fam(2, [3])

    def test_universe_range(self):
        with pytest.raises(UniverseRangeError):
            make_family(0, [])
        with pytest.raises(UniverseRangeError):
            make_family(63, [])

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.lists(st.integers(1, n)), max_size=12))))
    def test_idempotent_and_order_free(self, case):
        n, sets = case
        F = make_family(n, sets)
        assert make_family(n, F.sets()) == F
        assert make_family(n, list(reversed(sets))) == F
        assert np.all(np.diff(F.members.astype(np.int64)) > 0)

    def test_members_read_only(self):
        F = fam(3, [1])
        with pytest.raises(ValueError):
            F.members[0] = 5


def test_intersection_size():
    m = lambda *e: mask_from_elements(e, 3)
    assert intersection_size(m(1, 2), m(2, 3)) == 1
    assert intersection_size(m(1), m(1)) == 1
    assert intersection_size(m(), m(1, 2, 3)) == 0


class TestCross:
    def test_examples(self):
        A, B = fam(3, [1, 2]), fam(3, [2, 3])
        assert not satisfies_cross(A, B, AvoidOne(1))
        assert satisfies_cross(A, B, AvoidOne(2))
        assert satisfies_cross(power_set(2, 0b01), power_set(2, 0b10), AvoidOne(1))

    def test_identical_sets_are_constrained(self):
        F = fam(2, [1])
        assert not satisfies_cross(F, F, AvoidOne(1))

    def test_universe_mismatch(self):
        with pytest.raises(ValidationError):
            satisfies_cross(fam(2, [1]), fam(3, [1]), AvoidOne(1))

    @given(families(), families(), constraints())
    def test_symmetric(self, A, B, c):
        if A.n != B.n:
            return
        assert satisfies_cross(A, B, c) == satisfies_cross(B, A, c)

    @given(families(), constraints())
    def test_all_pairs_is_self_cross(self, F, c):
        assert satisfies_single(F, c, Convention.ALL) == satisfies_cross(F, F, c)


class TestSingle:
    def test_conventions_differ(self):
        F = fam(2, [], [1], [2])
        assert satisfies_single(F, AvoidOne(1), Convention.DISTINCT)
        assert not satisfies_single(F, AvoidOne(1), "all")

    def test_small_sets_plus_ground(self):
        F = fam(3, [], [1], [2], [3], [1, 2, 3])
        assert satisfies_single(F, AvoidOne(2), Convention.DISTINCT)

    @given(families(), constraints())
    def test_all_pairs_stricter(self, F, c):
        if satisfies_single(F, c, Convention.ALL):
            assert satisfies_single(F, c, Convention.DISTINCT)


class TestMaskOps:
    def test_complement(self):
        assert complement(0b001, 3) == 0b110
        assert complement(0, 3) == 0b111
        assert complement(0b111, 3) == 0

    @given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
    def test_complement_involution(self, case):
        n, a = case
        assert complement(complement(a, n), n) == a
        assert intersection_size(a, complement(a, n)) == 0

    def test_join(self):
        assert join(0b100, fam(3, [], [1])) == fam(3, [3], [1, 3])
        F = fam(3, [1], [2, 3])
        assert join(0, F) == F
        assert join(0b1, fam(3, [1], [])) == fam(3, [1])

    @given(families(), st.integers(0, 63))
    def test_join_shrinks(self, F, a):
        a &= (1 << F.n) - 1
        assert len(join(a, F)) <= len(F)

    def test_subfamily_containing(self):
        P2 = power_set(2)
        assert subfamily_containing(P2, 0b01) == fam(2, [1], [1, 2])
        assert subfamily_containing(P2, 0) == P2
        F = fam(3, [1, 2], [1, 3], [2, 3])
        assert subfamily_containing(F, 0b001) == fam(3, [1, 2], [1, 3])

    def test_delete_top_merges(self):
        F = fam(3, [1], [1, 3], [2, 3])
        assert delete_top(F) == fam(2, [1], [2])
        assert delete_top(F).n == 2

    def test_uniform_family_sizes(self):
        assert len(uniform_family(6, 3)) == 20
        assert uniform_family(6, 3).is_uniform(3)


class TestFileFormat:
    def test_round_trip(self):
        F = fam(4, [], [1, 3], [4], [1, 2, 3, 4])
        text = format_family(F)
        assert text.splitlines()[0] == "n=4"
        assert "-" in text.splitlines()
        assert parse_family(text) == F

    def test_comments_and_blanks(self):
        F = parse_family("# a comment\nn=3\n\n1,2\n-\n# another\n3\n")
        assert F == fam(3, [1, 2], [], [3])

    def test_missing_header(self):
        with pytest.raises(ValidationError):
            parse_family("1,2\n")

    def test_bad_token(self):
        with pytest.raises(ValidationError, match="line 2"):
            parse_family("n=3\n1,x\n")

    @settings(max_examples=50)
    @given(families(8))
    def test_round_trip_property(self, F):
        assert parse_family(format_family(F)) == F
