"""The rotation (Tamari) order on binary trees.

A right rotation rewrites a subtree ``(A ^ B) ^ C`` into ``A ^ (B ^ C)``;
it is addressed by the infix rank of the rewritten subtree's root, which
is stable under the rotation (the node at that rank becomes the root of
``B ^ C``).  Covers of the order are exactly single right rotations, and
``T0 <= T1`` holds when some chain of right rotations leads from ``T0``
to ``T1``.

The search-based order test prunes with the right-subtree weight
:func:`phi`, which strictly increases along every rotation.  For repeated
queries on one size class, :func:`tamari_poset` materializes all trees
with their cover edges and caches reachability sets per queried source.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .trees import (
    BinaryTree,
    all_trees,
    child_ranks,
    iter_subtrees,
    node,
    serialize,
    subtree_at,
)


class RotationError(ValueError):
    """Raised when a rotation is not applicable at the requested rank."""


class IncomparableError(ValueError):
    """Raised when an interval's endpoints are not ordered."""


def right_rotation(t: BinaryTree, rank: int) -> BinaryTree:
    """Rotate right at the node with the given infix rank.

    The node's left subtree must be nonempty; ranks of all nodes are
    preserved, and the node at ``rank`` ends up rooting ``B ^ C``.
    """
    if not 1 <= rank <= t.node_count:
        raise ValueError(f"rank {rank} out of range 1..{t.node_count}")

    def rebuild(cur: BinaryTree, r: int) -> BinaryTree:
        root_rank = cur.left.node_count + 1
        if r == root_rank:
            x = cur.left
            if x.node_count == 0:
                raise RotationError(
                    f"right rotation needs a left subtree at rank {rank}"
                )
            return node(x.left, node(x.right, cur.right))
        if r < root_rank:
            return node(rebuild(cur.left, r), cur.right)
        return node(cur.left, rebuild(cur.right, r - root_rank))

    return rebuild(t, rank)


def left_rotation(t: BinaryTree, rank: int) -> BinaryTree:
    """Rotate left at the node with the given infix rank; inverse of
    :func:`right_rotation` at the same rank.

    The node must be the right child of its parent; the parent's subtree
    ``A ^ (B ^ C)`` becomes ``(A ^ B) ^ C``.
    """
    if not 1 <= rank <= t.node_count:
        raise ValueError(f"rank {rank} out of range 1..{t.node_count}")

    def rebuild(cur: BinaryTree, r: int) -> BinaryTree:
        root_rank = cur.left.node_count + 1
        if r == root_rank:
            raise RotationError(
                f"left rotation needs the node at rank {rank} to be a right child"
            )
        if r < root_rank:
            return node(rebuild(cur.left, r), cur.right)
        rr = r - root_rank
        right = cur.right
        if rr == right.left.node_count + 1:
            return node(node(cur.left, right.left), right.right)
        return node(cur.left, rebuild(cur.right, rr))

    return rebuild(t, rank)


def phi(t: BinaryTree) -> int:
    """Total weight of right subtrees; strictly increases per rotation."""
    return sum(sub.right.node_count for _, sub in iter_subtrees(t))


def rotation_ranks(t: BinaryTree) -> tuple[int, ...]:
    """Ranks where a right rotation applies (nodes with a left subtree)."""
    return tuple(rank for rank, sub in iter_subtrees(t) if sub.left.node_count)


def covers(t: BinaryTree) -> tuple[BinaryTree, ...]:
    """All single right rotations of ``t``, in increasing rank order."""
    return tuple(right_rotation(t, rank) for rank in rotation_ranks(t))


def tamari_leq(
    t0: BinaryTree, t1: BinaryTree, poset: "TamariPoset | None" = None
) -> bool:
    """Whether ``t0 <= t1`` in the rotation order.

    The trees must have the same node count.  Without a poset this runs a
    forward search from ``t0`` pruned by :func:`phi`.
    """
    if t0.node_count != t1.node_count:
        raise ValueError(
            f"cannot compare trees with {t0.node_count} and {t1.node_count} nodes"
        )
    if t0 == t1:
        return True
    if poset is not None:
        return poset.leq_index(poset.index(t0), poset.index(t1))
    bound = phi(t1)
    if phi(t0) >= bound:
        return False
    seen = {t0}
    queue = deque([t0])
    while queue:
        cur = queue.popleft()
        for nxt in covers(cur):
            if nxt in seen:
                continue
            if nxt == t1:
                return True
            if phi(nxt) < bound:
                seen.add(nxt)
                queue.append(nxt)
    return False


def interval(
    t0: BinaryTree, t1: BinaryTree, poset: "TamariPoset | None" = None
) -> tuple[BinaryTree, ...]:
    """All trees ``t`` with ``t0 <= t <= t1``, sorted by tree string.

    Raises :class:`IncomparableError` when the endpoints are not ordered
    (so an unordered pair is distinguishable from a singleton interval).
    """
    if t0.node_count != t1.node_count:
        raise ValueError(
            f"cannot compare trees with {t0.node_count} and {t1.node_count} nodes"
        )
    if poset is not None:
        i, j = poset.index(t0), poset.index(t1)
        if not poset.leq_index(i, j):
            raise IncomparableError(
                f"{serialize(t0)} is not below {serialize(t1)}"
            )
        members = [
            poset.elements[k] for k in poset.interval_indices(i, j)
        ]
        return tuple(sorted(members, key=serialize))
    if not tamari_leq(t0, t1):
        raise IncomparableError(f"{serialize(t0)} is not below {serialize(t1)}")
    bound = phi(t1)
    reachable = {t0}
    queue = deque([t0])
    while queue:
        cur = queue.popleft()
        for nxt in covers(cur):
            if nxt not in reachable and phi(nxt) <= bound:
                reachable.add(nxt)
                queue.append(nxt)
    members = [t for t in reachable if tamari_leq(t, t1)]
    return tuple(sorted(members, key=serialize))


class TamariPoset:
    """All trees of one size with cover edges and cached reachability.

    Elements are indexed in the :func:`~tamari_balance.trees.all_trees`
    order.  Reachability sets are integer bitmasks over those indices,
    computed on demand per queried source and then cached.
    """

    def __init__(self, n: int):
        self.n = n
        self.elements: tuple[BinaryTree, ...] = all_trees(n)
        self._index: dict[BinaryTree, int] = {
            t: i for i, t in enumerate(self.elements)
        }
        self.cover_edges: list[tuple[int, ...]] = [
            tuple(self._index[c] for c in covers(t)) for t in self.elements
        ]
        self._reverse: list[tuple[int, ...]] | None = None
        self._up: dict[int, int] = {}
        self._down: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, t: BinaryTree) -> int:
        try:
            return self._index[t]
        except KeyError:
            raise ValueError(
                f"{serialize(t)} has {t.node_count} nodes, poset holds {self.n}"
            ) from None

    def _reverse_edges(self) -> list[tuple[int, ...]]:
        if self._reverse is None:
            rev: list[list[int]] = [[] for _ in self.elements]
            for i, outs in enumerate(self.cover_edges):
                for j in outs:
                    rev[j].append(i)
            self._reverse = [tuple(r) for r in rev]
        return self._reverse

    def _reach_mask(self, source: int, edges: list[tuple[int, ...]]) -> int:
        size = len(self.elements)
        seen = bytearray(size)
        seen[source] = 1
        queue = deque([source])
        while queue:
            cur = queue.popleft()
            for nxt in edges[cur]:
                if not seen[nxt]:
                    seen[nxt] = 1
                    queue.append(nxt)
        packed = bytearray((size + 7) // 8)
        for idx in range(size):
            if seen[idx]:
                packed[idx >> 3] |= 1 << (idx & 7)
        return int.from_bytes(bytes(packed), "little")

    def up_mask(self, i: int) -> int:
        """Bitmask of indices ``j`` with ``elements[i] <= elements[j]``."""
        mask = self._up.get(i)
        if mask is None:
            mask = self._reach_mask(i, self.cover_edges)
            self._up[i] = mask
        return mask

    def down_mask(self, j: int) -> int:
        """Bitmask of indices ``i`` with ``elements[i] <= elements[j]``."""
        mask = self._down.get(j)
        if mask is None:
            mask = self._reach_mask(j, self._reverse_edges())
            self._down[j] = mask
        return mask

    def leq_index(self, i: int, j: int) -> bool:
        if i in self._up:
            return bool(self._up[i] >> j & 1)
        if j in self._down:
            return bool(self._down[j] >> i & 1)
        return bool(self.up_mask(i) >> j & 1)

    def interval_indices(self, i: int, j: int) -> list[int]:
        """Indices of the interval ``[elements[i], elements[j]]``."""
        return mask_indices(self.up_mask(i) & self.down_mask(j))

    def mask_of(self, trees) -> int:
        """Bitmask selecting the given trees."""
        mask = 0
        for t in trees:
            mask |= 1 << self.index(t)
        return mask

    def trees_of(self, mask: int) -> list[BinaryTree]:
        return [self.elements[i] for i in mask_indices(mask)]

    def to_dot(self) -> str:
        """Hasse diagram in DOT format, nodes sorted by tree string."""
        order = sorted(range(len(self.elements)), key=lambda i: serialize(self.elements[i]))
        return hasse_dot(
            [self.elements[i] for i in order],
            [
                (self.elements[i], self.elements[j])
                for i in order
                for j in self.cover_edges[i]
            ],
        )


def mask_indices(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


_POSET_NODE_LIMIT = 14


@lru_cache(maxsize=3)
def tamari_poset(n: int) -> TamariPoset:
    """Materialized rotation order on all trees with ``n`` nodes.

    Guarded at ``n <= 14``; beyond that the Catalan growth makes the
    materialized poset unreasonable.
    """
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if n > _POSET_NODE_LIMIT:
        raise ValueError(f"poset materialization capped at {_POSET_NODE_LIMIT} nodes")
    return TamariPoset(n)


def hasse_dot(
    trees, edges, highlight=frozenset(), graph_name: str = "hasse"
) -> str:
    """Render a Hasse diagram as DOT.

    Nodes are labeled with tree strings and listed in sorted tree-string
    order; each edge points from the smaller to the larger tree.
    """
    names = {}
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;"]
    for t in sorted(set(trees) | {a for e in edges for a in e}, key=serialize):
        names[t] = f"n{len(names)}"
        style = ' style=filled fillcolor="lightblue"' if t in highlight else ""
        lines.append(f'  {names[t]} [label="{serialize(t)}"{style}];')
    for a, b in sorted(edges, key=lambda e: (serialize(e[0]), serialize(e[1]))):
        lines.append(f"  {names[a]} -> {names[b]};")
    lines.append("}")
    return "\n".join(lines)
