"""Tests for imbalance patterns and balanced-tree classification."""

import pytest
from hypothesis import given

from tamari_balance.balance import (
    balanced_trees,
    balanced_trees_of_height,
    is_balanced,
)
from tamari_balance.fixtures import INTERIOR_BY_HEIGHT, fib
from tamari_balance.patterns import (
    BalanceFlag,
    ImbalancePattern,
    LEFT_INTERIOR_PAIRS,
    MAXIMAL_RIGHT_PAIRS,
    MINIMAL_LEFT_PAIRS,
    RIGHT_INTERIOR_PAIRS,
    PatternParseError,
    classify_balanced,
    fibonacci_tree,
    interior_count,
    interior_trees,
    matches_at,
    occurs,
    parse_pattern,
    pattern_set,
)
from tamari_balance.tamari import (
    RotationError,
    covers,
    left_rotation,
    right_rotation,
    rotation_ranks,
)
from tamari_balance.trees import LEAF, iter_subtrees, mirror, parse, serialize

from conftest import small_trees


def predecessors(t):
    out = []
    for rank in range(1, t.node_count + 1):
        try:
            out.append(left_rotation(t, rank))
        except RotationError:
            continue
    return out


class TestPatternLiterals:
    def test_parse_canonical(self):
        p = parse_pattern("[[_ -1 _] -1 _]")
        assert p == ImbalancePattern(-1, ImbalancePattern(-1), None)
        assert str(p) == "[[_ -1 _] -1 _]"

    def test_label_position_is_free(self):
        canonical = parse_pattern("[[_ 0 _] 1 _]")
        assert parse_pattern("[1 [_ 0 _] _]") == canonical
        assert parse_pattern("[[0 _ _] _ 1]") == canonical

    def test_round_trip(self):
        texts = ["[_ 0 _]", "[[_ -1 _] -1 _]", "[_ 1 [_ 2 [_ 0 _]]]"]
        for text in texts:
            assert str(parse_pattern(text)) == text

    @pytest.mark.parametrize(
        "bad",
        ["", "_", "[0 1 _]", "[_ _ _]", "[0 _]", "[0 _ _ _]", "[0 _ _", "[x 0 _]", "[_ 0 _] _"],
    )
    def test_parse_errors(self, bad):
        with pytest.raises(PatternParseError):
            parse_pattern(bad)


class TestMatching:
    def test_single_label_occurrences(self):
        t = parse("((.((..).))(((..).)(..)))")
        present = {
            sub.right.height - sub.left.height for _, sub in iter_subtrees(t)
        }
        for label in range(-3, 4):
            assert occurs(t, parse_pattern(f"[_ {label} _]")) == (label in present)

    def test_child_patterns_constrain_children(self):
        t = parse("(((..).).)")
        assert occurs(t, parse_pattern("[[_ 0 _] -1 _]"))
        assert occurs(t, parse_pattern("[[_ -1 _] -2 _]"))
        assert not occurs(t, parse_pattern("[[_ -1 _] -1 _]"))
        assert not occurs(t, parse_pattern("[_ -1 [_ 0 _]]"))

    def test_pattern_children_must_exist(self):
        assert occurs(parse("(..)"), parse_pattern("[_ 0 _]"))
        assert not occurs(parse("(..)"), parse_pattern("[[_ 0 _] 0 _]"))
        assert not occurs(LEAF, parse_pattern("[_ 0 _]"))

    def test_matches_at_is_rooted(self):
        t = parse("((((..).)(..))((..).))")
        assert matches_at(t, parse_pattern("[[_ -1 _] -1 _]"))
        assert not matches_at(t, parse_pattern("[[_ 0 _] -1 _]"))
        assert occurs(t, parse_pattern("[[_ 0 _] -1 _]"))


class TestPatternSets:
    def test_shapes(self):
        assert len(pattern_set("max")) == 2
        assert len(pattern_set("min")) == 2
        assert len(pattern_set("rint")) == 7
        assert len(pattern_set("lint")) == 7
        assert set(MAXIMAL_RIGHT_PAIRS) | set(RIGHT_INTERIOR_PAIRS) == {
            (a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)
        }
        assert set(MINIMAL_LEFT_PAIRS) | set(LEFT_INTERIOR_PAIRS) == {
            (a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)
        }

    def test_rendered_forms(self):
        assert sorted(map(str, pattern_set("max"))) == [
            "[[_ -1 _] -1 _]",
            "[[_ 0 _] -1 _]",
        ]
        assert sorted(map(str, pattern_set("min"))) == [
            "[_ 1 [_ 0 _]]",
            "[_ 1 [_ 1 _]]",
        ]

    def test_unknown_set(self):
        with pytest.raises(ValueError):
            pattern_set("nope")


def occurrence_oracle(t):
    """Classification computed from the public pattern occurrences."""
    has = {
        name: any(occurs(t, p) for p in pattern_set(name))
        for name in ("max", "min", "rint", "lint")
    }
    flags = set()
    if not has["max"]:
        flags.add(BalanceFlag.MAXIMAL_RIGHT)
    if not has["rint"]:
        flags.add(BalanceFlag.RIGHT_INTERIOR)
    if has["max"] and has["rint"]:
        flags.add(BalanceFlag.RIGHT_MIXED)
    if not has["min"]:
        flags.add(BalanceFlag.MINIMAL_LEFT)
    if not has["lint"]:
        flags.add(BalanceFlag.LEFT_INTERIOR)
    if has["min"] and has["lint"]:
        flags.add(BalanceFlag.LEFT_MIXED)
    return frozenset(flags)


class TestClassification:
    def test_requires_balance(self):
        with pytest.raises(ValueError):
            classify_balanced(parse("(.(.(..)))"))

    def test_matches_occurrence_oracle(self):
        for n in range(10):
            for t in balanced_trees(n):
                assert classify_balanced(t) == occurrence_oracle(t), serialize(t)

    def test_rotation_characterizations(self):
        for n in range(11):
            for t in balanced_trees(n):
                flags = classify_balanced(t)
                ups = [is_balanced(u) for u in covers(t)]
                downs = [is_balanced(u) for u in predecessors(t)]
                assert (BalanceFlag.MAXIMAL_RIGHT in flags) == (not any(ups))
                assert (BalanceFlag.RIGHT_INTERIOR in flags) == all(ups)
                assert (BalanceFlag.MINIMAL_LEFT in flags) == (not any(downs))
                assert (BalanceFlag.LEFT_INTERIOR in flags) == all(downs)

    def test_three_way_partition(self):
        for n in range(3, 13):
            for t in balanced_trees(n):
                flags = classify_balanced(t)
                rights = [
                    BalanceFlag.MAXIMAL_RIGHT in flags,
                    BalanceFlag.RIGHT_INTERIOR in flags,
                    BalanceFlag.RIGHT_MIXED in flags,
                ]
                lefts = [
                    BalanceFlag.MINIMAL_LEFT in flags,
                    BalanceFlag.LEFT_INTERIOR in flags,
                    BalanceFlag.LEFT_MIXED in flags,
                ]
                assert sum(rights) == 1, serialize(t)
                assert sum(lefts) == 1, serialize(t)

    def test_tiny_trees_may_overlap(self):
        flags = classify_balanced(parse("(.(..))"))
        assert BalanceFlag.MAXIMAL_RIGHT in flags
        assert BalanceFlag.RIGHT_INTERIOR in flags

    @given(small_trees)
    def test_mirror_swaps_sides(self, t):
        if not is_balanced(t):
            return
        swapped = {
            BalanceFlag.MAXIMAL_RIGHT: BalanceFlag.MINIMAL_LEFT,
            BalanceFlag.MINIMAL_LEFT: BalanceFlag.MAXIMAL_RIGHT,
            BalanceFlag.RIGHT_INTERIOR: BalanceFlag.LEFT_INTERIOR,
            BalanceFlag.LEFT_INTERIOR: BalanceFlag.RIGHT_INTERIOR,
            BalanceFlag.RIGHT_MIXED: BalanceFlag.LEFT_MIXED,
            BalanceFlag.LEFT_MIXED: BalanceFlag.RIGHT_MIXED,
        }
        assert classify_balanced(mirror(t)) == frozenset(
            swapped[f] for f in classify_balanced(t)
        )


class TestInteriorTrees:
    def test_bases(self):
        assert interior_trees(0) == (LEAF,)
        assert [serialize(t) for t in interior_trees(2)] == ["((..).)", "(.(..))"]
        assert [serialize(t) for t in interior_trees(3)] == ["(((..).)(..))"]

    def test_counts_match_fixture(self):
        for h in range(13):
            assert interior_count(h) == INTERIOR_BY_HEIGHT[h], h

    def test_power_law(self):
        for h in range(3, 13):
            assert interior_count(h) == 2 ** fib(h - 3), h

    @pytest.mark.parametrize("h", [4, 5])
    def test_construction_matches_exhaustive(self, h):
        exhaustive = {
            t
            for t in balanced_trees_of_height(h)
            if BalanceFlag.RIGHT_INTERIOR in classify_balanced(t)
        }
        assert set(interior_trees(h)) == exhaustive

    def test_members_are_interior(self):
        for h in range(8):
            for t in interior_trees(h):
                assert t.height == h
                if t.node_count:
                    assert BalanceFlag.RIGHT_INTERIOR in classify_balanced(t)

    def test_members_force_balanced_rotations(self):
        for t in interior_trees(6):
            for rank in rotation_ranks(t):
                assert is_balanced(right_rotation(t, rank))

    def test_guards(self):
        with pytest.raises(ValueError):
            interior_trees(11)
        with pytest.raises(ValueError):
            interior_trees(-1)
        with pytest.raises(ValueError):
            balanced_trees_of_height(6)


class TestFibonacciTrees:
    def test_seeds_and_growth(self):
        assert fibonacci_tree(0) is LEAF
        assert fibonacci_tree(1) is LEAF
        assert serialize(fibonacci_tree(2)) == "(..)"
        assert serialize(fibonacci_tree(3)) == "((..).)"
        assert serialize(fibonacci_tree(4)) == "(((..).)(..))"

    def test_node_counts(self):
        for i in range(2, 20):
            assert fibonacci_tree(i).node_count == fib(i + 1) - 1

    def test_heights_and_interiority(self):
        for i in range(2, 12):
            assert fibonacci_tree(i).height == i - 1
        for i in range(2, 12):
            t = fibonacci_tree(i)
            assert BalanceFlag.RIGHT_INTERIOR in classify_balanced(t)
        for i in range(1, 11):
            assert fibonacci_tree(i + 1) in interior_trees(i)

    def test_guard(self):
        with pytest.raises(ValueError):
            fibonacci_tree(26)
        with pytest.raises(ValueError):
            fibonacci_tree(-1)
