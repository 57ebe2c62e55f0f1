"""Hypercube structure of balanced intervals in the rotation order.

Every interval between comparable balanced trees is a Boolean lattice:
the lower endpoint carries a set of conservative rotation roots, the
rotations at those roots commute, and applying an arbitrary subset gives
the elements of the interval.  This module computes the root sets,
verifies the hypercube isomorphism explicitly, counts balanced and
maximal balanced intervals along two independent routes (poset brute
force and grammar series), and builds the balanced subposet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .balance import RotationKind, classify_rotation, balanced_trees, is_balanced
from .grammars import builtin_grammar, series
from .patterns import BalanceFlag, classify_balanced
from .polynomials import Monomial, Polynomial
from .tamari import (
    IncomparableError,
    TamariPoset,
    hasse_dot,
    interval,
    right_rotation,
    rotation_ranks,
    tamari_leq,
    tamari_poset,
)
from .trees import BinaryTree, child_ranks, serialize


@dataclass(frozen=True)
class RotationRootSet:
    """Lower endpoint plus the ranks of the rotations reaching the upper."""

    base: BinaryTree
    ranks: frozenset[int]

    def apply(self, ranks: Iterable[int]) -> BinaryTree:
        """Tree obtained by rotating the base at a subset of the roots.

        The rotations commute; this applies them in ascending rank order
        and asserts that descending order agrees.
        """
        chosen = sorted(set(ranks))
        if not set(chosen) <= self.ranks:
            raise ValueError("ranks outside the root set")
        ascending = self.base
        for rank in chosen:
            ascending = right_rotation(ascending, rank)
        descending = self.base
        for rank in reversed(chosen):
            descending = right_rotation(descending, rank)
        assert ascending == descending, "root rotations failed to commute"
        return ascending


def _below_checker(
    t1: BinaryTree, poset: TamariPoset | None
) -> Callable[[BinaryTree], bool]:
    if poset is None:
        return lambda u: tamari_leq(u, t1)
    mask = poset.down_mask(poset.index(t1))
    return lambda u: bool(mask >> poset.index(u) & 1)


def _require_balanced_pair(t0: BinaryTree, t1: BinaryTree, poset) -> None:
    if not is_balanced(t0) or not is_balanced(t1):
        raise ValueError("both interval endpoints must be balanced")
    if not tamari_leq(t0, t1, poset=poset):
        raise IncomparableError(
            f"{serialize(t0)} is not below {serialize(t1)}"
        )


def rotation_root_set(
    t0: BinaryTree, t1: BinaryTree, poset: TamariPoset | None = None
) -> RotationRootSet:
    """Roots of the conservative rotations transforming ``t0`` into ``t1``.

    Greedy: repeatedly apply any conservative balancing rotation that
    stays below ``t1``.  The root set is order-independent; a replay in
    the opposite order is asserted.  Endpoints must be balanced and
    comparable.
    """
    _require_balanced_pair(t0, t1, poset)
    below = _below_checker(t1, poset)
    ranks: list[int] = []
    cur = t0
    while cur != t1:
        for rank in rotation_ranks(cur):
            if (
                classify_rotation(cur, rank).kind
                is not RotationKind.CONSERVATIVE_BALANCING
            ):
                continue
            rotated = right_rotation(cur, rank)
            if below(rotated):
                ranks.append(rank)
                cur = rotated
                break
        else:
            raise AssertionError(
                "no conservative rotation advances toward the upper endpoint"
            )
    assert len(set(ranks)) == len(ranks), "a root repeated"
    result = RotationRootSet(t0, frozenset(ranks))
    replay = t0
    for rank in sorted(ranks, reverse=True):
        replay = right_rotation(replay, rank)
    assert replay == t1, "root set is order-dependent"
    for rank in result.ranks:
        left_rank = child_ranks(t0, rank)[0]
        assert left_rank not in result.ranks, (
            "left child of a root cannot be a root"
        )
    return result


def verify_hypercube(
    t0: BinaryTree, t1: BinaryTree, poset: TamariPoset | None = None
) -> tuple[int, bool]:
    """Dimension of the interval and whether it is a genuine hypercube.

    Builds the subset-to-tree map over the rotation root set and checks
    that it hits every interval element exactly once and that subset
    inclusion coincides with the rotation order on the interval.
    """
    roots = rotation_root_set(t0, t1, poset)
    ranks = sorted(roots.ranks)
    k = len(ranks)
    trees: list[BinaryTree] = []
    for bits in range(1 << k):
        subset = [ranks[i] for i in range(k) if bits >> i & 1]
        trees.append(roots.apply(subset))
    if len(set(trees)) != 1 << k:
        return k, False
    if set(trees) != set(interval(t0, t1, poset=poset)):
        return k, False
    checkers = [_below_checker(t, poset) for t in trees]
    for lo in range(1 << k):
        for hi in range(1 << k):
            contained = lo & hi == lo
            if contained != checkers[hi](trees[lo]):
                return k, False
    return k, True


def hypercube_histogram(n: int, poset: TamariPoset | None = None) -> dict[int, int]:
    """Dimension counts over all comparable balanced pairs at size ``n``."""
    poset = poset if poset is not None else tamari_poset(n)
    histogram: dict[int, int] = {}
    for upper in balanced_trees(n):
        below = _below_checker(upper, poset)
        for lower in balanced_trees(n):
            if not below(lower):
                continue
            k = len(rotation_root_set(lower, upper, poset).ranks)
            histogram[k] = histogram.get(k, 0) + 1
    return dict(sorted(histogram.items()))


@lru_cache(maxsize=None)
def _specialized_series(name: str, max_degree: int) -> Polynomial:
    """Grammar series with the auxiliary variables switched off."""
    full = series(builtin_grammar(name), max_degree)
    keep = {"x"} | full.markers
    zeros = {v: 0 for v in full.variables() - keep}
    return full.specialize(zeros)


def count_balanced_intervals(n: int, poset: TamariPoset | None = None) -> int:
    """Number of comparable balanced pairs at size ``n``.

    Computed by brute force over the balanced trees and, independently,
    as a grammar series coefficient; the two must agree and the brute
    count is returned.
    """
    poset = poset if poset is not None else tamari_poset(n)
    brute = 0
    for upper in balanced_trees(n):
        below = _below_checker(upper, poset)
        brute += sum(1 for lower in balanced_trees(n) if below(lower))
    via_grammar = _specialized_series("bi", n + 1).coefficient({"x": n + 1})
    assert brute == via_grammar, (
        f"balanced interval routes disagree at n={n}: {brute} vs {via_grammar}"
    )
    return brute


def _maximal_interval_pairs(
    n: int, poset: TamariPoset
) -> list[tuple[BinaryTree, BinaryTree]]:
    lowers = [
        t
        for t in balanced_trees(n)
        if BalanceFlag.MINIMAL_LEFT in classify_balanced(t)
    ]
    uppers = [
        t
        for t in balanced_trees(n)
        if BalanceFlag.MAXIMAL_RIGHT in classify_balanced(t)
    ]
    pairs = []
    for upper in uppers:
        below = _below_checker(upper, poset)
        pairs.extend((lower, upper) for lower in lowers if below(lower))
    return pairs


def count_maximal_balanced_intervals(
    n: int, by_dimension: bool = False, poset: TamariPoset | None = None
) -> int | Polynomial:
    """Maximal balanced intervals at size ``n``.

    An interval is maximal when its lower endpoint admits no balanced
    predecessor and its upper endpoint no balanced successor.  Returns
    the total count, or with ``by_dimension`` the polynomial whose
    ``xi^k`` coefficient counts the dimension-k intervals.  Both forms
    are cross-checked against the corresponding grammar series.
    """
    poset = poset if poset is not None else tamari_poset(n)
    pairs = _maximal_interval_pairs(n, poset)
    if not by_dimension:
        brute = len(pairs)
        via_grammar = _specialized_series("mbi", n + 1).coefficient({"x": n + 1})
        assert brute == via_grammar, (
            f"maximal interval routes disagree at n={n}: {brute} vs {via_grammar}"
        )
        return brute
    counts: dict[int, int] = {}
    for lower, upper in pairs:
        k = len(rotation_root_set(lower, upper, poset).ranks)
        counts[k] = counts.get(k, 0) + 1
    brute_poly = Polynomial(
        {Monomial({"xi": k} if k else {}): c for k, c in counts.items()},
        markers=("xi",),
    )
    refined = _specialized_series("mbi_xi", n + 1)
    via_grammar = Polynomial(
        {
            mono.without("x"): coeff
            for mono, coeff in refined.items()
            if mono.exponent("x") == n + 1
        },
        markers=("xi",),
    )
    assert brute_poly == via_grammar, (
        f"refined maximal interval routes disagree at n={n}: "
        f"{brute_poly} vs {via_grammar}"
    )
    return brute_poly


@dataclass(frozen=True)
class BalancedSubposet:
    """Balanced trees of one size with the covers that stay balanced."""

    n: int
    trees: tuple[BinaryTree, ...]
    edges: tuple[tuple[BinaryTree, BinaryTree], ...]

    def components(self) -> list[tuple[tuple[BinaryTree, ...], int]]:
        """Connected components with their edge counts, largest first."""
        neighbors: dict[BinaryTree, set[BinaryTree]] = {
            t: set() for t in self.trees
        }
        for src, dst in self.edges:
            neighbors[src].add(dst)
            neighbors[dst].add(src)
        seen: set[BinaryTree] = set()
        components = []
        for start in self.trees:
            if start in seen:
                continue
            stack = [start]
            members = []
            seen.add(start)
            while stack:
                cur = stack.pop()
                members.append(cur)
                for nxt in neighbors[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            member_set = set(members)
            edge_count = sum(
                1 for src, dst in self.edges if src in member_set
            )
            members.sort(key=serialize)
            components.append((tuple(members), edge_count))
        components.sort(key=lambda item: (-len(item[0]), -item[1], serialize(item[0][0])))
        return components

    def structure(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Component sizes and edge counts, aligned and largest first."""
        comps = self.components()
        return (
            tuple(len(members) for members, _ in comps),
            tuple(edge_count for _, edge_count in comps),
        )

    def to_dot(self) -> str:
        return hasse_dot(
            self.trees, self.edges, graph_name=f"balanced_{self.n}"
        )


def balanced_subposet(n: int) -> BalancedSubposet:
    """Restriction of the rotation order to the balanced trees of size ``n``.

    Edges are the covers with both ends balanced; by the closure theorem
    these generate the full restricted order.
    """
    trees = balanced_trees(n)
    edges = []
    for t in trees:
        for rank in rotation_ranks(t):
            if (
                classify_rotation(t, rank).kind
                is RotationKind.CONSERVATIVE_BALANCING
            ):
                edges.append((t, right_rotation(t, rank)))
    for src, dst in edges:
        assert is_balanced(dst)
    return BalancedSubposet(n, trees, tuple(edges))
