"""Tree families carved out by imbalance rules and their order structure.

Generalizes the height-difference condition to an arbitrary set of allowed
imbalance values, decides which interval-shaped sets give families closed
by interval in the rotation order, and covers the companion families:
weight-balanced trees, trees with a fixed canopy, and trees with a fixed
number of right children.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .tamari import TamariPoset, phi, tamari_poset
from .trees import (
    LEAF,
    BinaryTree,
    all_trees,
    canopy,
    iter_subtrees,
    nar,
    node,
    parse,
    serialize,
    subtree_at,
)

_INTERVAL_RE = re.compile(r"^(-?\d+)?\.\.(-?\d+)?$")


@dataclass(frozen=True)
class ImbalanceSet:
    """Allowed imbalance values: an explicit finite set or an interval.

    ``values`` holds an explicit finite set; otherwise ``lower`` and
    ``upper`` bound a contiguous integer interval, with ``None`` marking
    an unbounded end.  Zero must always be a member, since every tree with
    at most one node forces the imbalance 0.
    """

    values: frozenset[int] | None = None
    lower: int | None = None
    upper: int | None = None

    def __post_init__(self) -> None:
        if self.values is not None and not (
            self.lower is None and self.upper is None
        ):
            raise ValueError("give either an explicit set or interval bounds")
        if (
            self.lower is not None
            and self.upper is not None
            and self.lower > self.upper
        ):
            raise ValueError(f"empty interval {self.lower}..{self.upper}")
        if 0 not in self:
            raise ValueError("an imbalance set must contain 0")

    @classmethod
    def of(cls, *values: int) -> "ImbalanceSet":
        """Explicit finite set, e.g. ``ImbalanceSet.of(-1, 0, 1)``."""
        return cls(values=frozenset(values))

    @classmethod
    def between(cls, lower: int | None, upper: int | None) -> "ImbalanceSet":
        """Contiguous interval; ``None`` leaves that side unbounded."""
        return cls(lower=lower, upper=upper)

    @classmethod
    def parse(cls, text: str) -> "ImbalanceSet":
        """Read ``a..b`` (either bound optional) or a comma list of values."""
        text = text.strip()
        match = _INTERVAL_RE.match(text)
        if match:
            low, high = match.groups()
            return cls.between(
                None if low is None else int(low),
                None if high is None else int(high),
            )
        try:
            values = frozenset(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"cannot read imbalance set from {text!r}") from None
        return cls(values=values)

    def __contains__(self, value: int) -> bool:
        if self.values is not None:
            return value in self.values
        if self.lower is not None and value < self.lower:
            return False
        if self.upper is not None and value > self.upper:
            return False
        return True

    def __str__(self) -> str:
        if self.values is not None:
            return ",".join(str(v) for v in sorted(self.values))
        low = "" if self.lower is None else str(self.lower)
        high = "" if self.upper is None else str(self.upper)
        return f"{low}..{high}"

    def bounds(self) -> tuple[int | None, int | None] | None:
        """Interval bounds, or ``None`` when the set is not contiguous."""
        if self.values is None:
            return (self.lower, self.upper)
        ordered = sorted(self.values)
        if ordered == list(range(ordered[0], ordered[-1] + 1)):
            return (ordered[0], ordered[-1])
        return None

    def mirrored(self) -> "ImbalanceSet":
        """The negated set, matching the left-right reflection of trees."""
        if self.values is not None:
            return ImbalanceSet(values=frozenset(-v for v in self.values))
        return ImbalanceSet(
            lower=None if self.upper is None else -self.upper,
            upper=None if self.lower is None else -self.lower,
        )


def imbalances_within(t: BinaryTree, allowed: ImbalanceSet) -> bool:
    """Whether every node's imbalance belongs to the allowed set."""
    return all(
        sub.right.height - sub.left.height in allowed
        for _, sub in iter_subtrees(t)
    )


_MAX_FAMILY_NODES = 26


def imbalance_family(n: int, allowed: ImbalanceSet) -> tuple[BinaryTree, ...]:
    """All trees with ``n`` nodes whose imbalances stay in ``allowed``.

    Built bottom-up over (node count, height) pairs, so the cost scales
    with the family rather than with the Catalan numbers; sorted by tree
    string.
    """
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if n > _MAX_FAMILY_NODES:
        raise ValueError(f"family enumeration capped at {_MAX_FAMILY_NODES} nodes")
    members = [t for h in range(n + 1) for t in _family_level(n, h, allowed)]
    return tuple(sorted(members, key=serialize))


@lru_cache(maxsize=None)
def _family_level(
    n: int, h: int, allowed: ImbalanceSet
) -> tuple[BinaryTree, ...]:
    if n == 0:
        return (LEAF,) if h == 0 else ()
    if h < 1 or h > n or n > 2**h - 1:
        return ()
    out = []
    for n_left in range(n):
        n_right = n - 1 - n_left
        for h_left in range(min(n_left, h - 1) + 1):
            if h_left == h - 1:
                h_rights: tuple[int, ...] = tuple(range(min(n_right, h - 1) + 1))
            elif h - 1 <= n_right:
                h_rights = (h - 1,)
            else:
                h_rights = ()
            for h_right in h_rights:
                if h_right - h_left not in allowed:
                    continue
                for left in _family_level(n_left, h_left, allowed):
                    for right in _family_level(n_right, h_right, allowed):
                        out.append(node(left, right))
    return tuple(out)


@dataclass(frozen=True)
class ClosureCounterexample:
    """Cover chain whose endpoints satisfy a predicate an inner tree fails.

    ``chain`` steps through single rotations; the predicate holds at both
    ends and fails at ``chain[failing_index]``.  Other inner trees carry
    no promise either way.
    """

    chain: tuple[BinaryTree, ...]
    failing_index: int

    @property
    def lower(self) -> BinaryTree:
        return self.chain[0]

    @property
    def middle(self) -> BinaryTree:
        return self.chain[self.failing_index]

    @property
    def upper(self) -> BinaryTree:
        return self.chain[-1]


_MAX_CLOSURE_NODES = 12


def closure_check(
    pred: Callable[[BinaryTree], bool],
    n: int,
    poset: TamariPoset | None = None,
) -> ClosureCounterexample | None:
    """Search all trees with ``n`` nodes for an interval escaping ``pred``.

    Returns ``None`` when every tree between two predicate-satisfying
    endpoints satisfies the predicate as well, otherwise a deterministic
    witness chain through a failing tree.
    """
    if n > _MAX_CLOSURE_NODES:
        raise ValueError(f"closure sweep capped at {_MAX_CLOSURE_NODES} nodes")
    if poset is None:
        poset = tamari_poset(n)
    elements = poset.elements
    satisfied = [bool(pred(t)) for t in elements]
    order = sorted(range(len(elements)), key=lambda i: phi(elements[i]))
    below = [i if satisfied[i] else -1 for i in range(len(elements))]
    for i in order:
        if below[i] < 0:
            continue
        for j in poset.cover_edges[i]:
            if below[j] < 0:
                below[j] = below[i]
    above = [-1] * len(elements)
    for i in reversed(order):
        if satisfied[i]:
            above[i] = i
            continue
        for j in poset.cover_edges[i]:
            if above[j] >= 0:
                above[i] = above[j]
                break
    for i in order:
        if not satisfied[i] and below[i] >= 0 and above[i] >= 0:
            rising = _cover_path(poset, below[i], i)
            full = rising + _cover_path(poset, i, above[i])[1:]
            return ClosureCounterexample(
                chain=tuple(elements[k] for k in full),
                failing_index=len(rising) - 1,
            )
    return None


def _cover_path(poset: TamariPoset, i: int, j: int) -> list[int]:
    """Some saturated chain of indices from ``i`` up to ``j``."""
    allowed = poset.down_mask(j)
    path = [i]
    while path[-1] != j:
        for nxt in poset.cover_edges[path[-1]]:
            if allowed >> nxt & 1:
                path.append(nxt)
                break
        else:
            raise AssertionError("no rotation advances toward the upper endpoint")
    return path


@dataclass(frozen=True)
class ClosureVerdict:
    """Whether an imbalance interval yields an interval-closed family.

    For non-closed families ``lemma`` names the reusable witness chain by
    the interval's top value (``upper-0`` through ``upper-3-plus``), and
    ``mirrored`` records that the chain applies to the reflected family.
    """

    closed: bool
    lemma: str | None = None
    mirrored: bool = False


_CLOSED_BOUNDS = {(0, 0), (-1, 0), (0, 1), (-1, 1), (None, None)}


def classify_interval_closure(allowed: ImbalanceSet) -> ClosureVerdict:
    """Decide interval closure for a contiguous set of imbalance values.

    The closed families are exactly those allowing {0}, {-1,0}, {0,1},
    {-1,0,1}, or every integer.  Anything else is refuted by one of four
    fixed three-tree chains, applied directly when the set reaches down
    to -2 and has a finite top, and to the reflected family otherwise.
    """
    bounds = allowed.bounds()
    if bounds is None:
        raise ValueError("closure classification needs a contiguous interval")
    lower, upper = bounds
    if (lower, upper) in _CLOSED_BOUNDS:
        return ClosureVerdict(closed=True)
    if (lower is None or lower <= -2) and upper is not None:
        return ClosureVerdict(closed=False, lemma=_chain_id(upper))
    assert lower is not None
    return ClosureVerdict(closed=False, lemma=_chain_id(-lower), mirrored=True)


def _chain_id(top: int) -> str:
    return f"upper-{top}" if top <= 2 else "upper-3-plus"


def weight_imbalance(t: BinaryTree, rank: int | None = None) -> int:
    """Node-count difference (right minus left) at a node.

    With ``rank`` omitted, the root's value; the tree must be nonempty.
    """
    sub = t if rank is None else subtree_at(t, rank)
    if sub.left is None or sub.right is None:
        raise ValueError("the empty tree has no weight imbalance")
    return sub.right.node_count - sub.left.node_count


def is_weight_balanced(t: BinaryTree) -> bool:
    """Whether every node's subtree sizes differ by at most one."""
    return all(
        abs(sub.right.node_count - sub.left.node_count) <= 1
        for _, sub in iter_subtrees(t)
    )


_MAX_WEIGHT_NODES = 15


@lru_cache(maxsize=None)
def weight_balanced_trees(n: int) -> tuple[BinaryTree, ...]:
    """All weight-balanced trees with ``n`` nodes, sorted by tree string."""
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if n > _MAX_WEIGHT_NODES:
        raise ValueError(
            f"weight-balanced enumeration capped at {_MAX_WEIGHT_NODES} nodes"
        )
    if n == 0:
        return (LEAF,)
    rest = n - 1
    splits = (
        [(rest // 2, rest // 2)]
        if rest % 2 == 0
        else [(rest // 2, rest // 2 + 1), (rest // 2 + 1, rest // 2)]
    )
    members = [
        node(left, right)
        for n_left, n_right in splits
        for left in weight_balanced_trees(n_left)
        for right in weight_balanced_trees(n_right)
    ]
    return tuple(sorted(members, key=serialize))


@lru_cache(maxsize=None)
def weight_balanced_count(n: int) -> int:
    """Number of weight-balanced trees, by the split recurrence.

    Counts double up at even sizes and square at odd ones, because the
    subtree sizes of a weight-balanced root are forced up to swapping.
    """
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if n <= 1:
        return 1
    half = n // 2
    if n % 2 == 0:
        return 2 * weight_balanced_count(half) * weight_balanced_count(half - 1)
    return weight_balanced_count(half) ** 2


_RANK_SHAPE = parse("(.(..))")


def weight_rank(t: BinaryTree) -> int:
    """Number of subtrees equal to the two-node right chain.

    Each cover between weight-balanced trees raises this count by exactly
    one, so it grades the weight-balanced subposet.
    """
    return sum(1 for _, sub in iter_subtrees(t) if sub == _RANK_SHAPE)


@dataclass(frozen=True)
class CanopyClass:
    """All trees sharing one orientation word, with the class extremes."""

    word: str
    members: tuple[BinaryTree, ...]
    lower: BinaryTree
    upper: BinaryTree


def canopy_class(u: str, n: int) -> CanopyClass:
    """Trees with ``n`` nodes whose canopy equals ``u``.

    The word must have length ``n - 1``.  The class is never empty and
    forms an interval of the rotation order; the extremes returned here
    are its unique rotation-count minimizer and maximizer, which the
    interval property makes the least and greatest members.
    """
    if n < 1:
        raise ValueError("canopy classes need at least one node")
    if len(u) != n - 1:
        raise ValueError(f"word length {len(u)} does not match {n} nodes")
    if set(u) - {"0", "1"}:
        raise ValueError(f"canopy words use letters 0 and 1 only: {u!r}")
    members = tuple(
        sorted((t for t in all_trees(n) if canopy(t) == u), key=serialize)
    )
    assert members, "every orientation word labels at least one tree"
    by_phi = sorted(members, key=phi)
    if len(by_phi) > 1:
        assert phi(by_phi[0]) < phi(by_phi[1]), "least member is not unique"
        assert phi(by_phi[-1]) > phi(by_phi[-2]), "greatest member is not unique"
    return CanopyClass(
        word=u, members=members, lower=by_phi[0], upper=by_phi[-1]
    )


def narayana_class(n: int, k: int) -> tuple[BinaryTree, ...]:
    """Trees with ``n`` nodes, exactly ``k`` of which have a right child.

    Equals the union of the canopy classes whose word has ``k`` ones.
    """
    if n == 0:
        if k != 0:
            raise ValueError("the empty tree has no right children")
        return (LEAF,)
    if not 0 <= k <= n - 1:
        raise ValueError(f"right-child count {k} out of range 0..{n - 1}")
    return tuple(
        sorted((t for t in all_trees(n) if nar(t) == k), key=serialize)
    )


def narayana_row(n: int) -> tuple[int, ...]:
    """Class sizes for ``k = 0 .. n - 1`` at a fixed node count."""
    if n < 1:
        raise ValueError("rows start at one node")
    counts = [0] * n
    for t in all_trees(n):
        counts[nar(t)] += 1
    return tuple(counts)
