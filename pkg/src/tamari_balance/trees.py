"""Immutable binary trees with infix-rank addressing.

A tree is either the empty tree (a leaf slot, drawn ``.``) or an internal
node with two subtrees, drawn ``(<left><right>)``.  Internal nodes are
numbered 1..n by infix order (left subtree, node, right subtree); all
node-addressed operations take these 1-based ranks.

Heights count internal nodes on a longest root-to-leaf path: the empty
tree has height 0 and a single node has height 1.  The imbalance of a
node is the height of its right subtree minus the height of its left
subtree.

Trees are hash-consed: every constructor in this module routes through
:func:`node`, so structurally equal trees built here are the same object
and equality is cheap.  Instances are immutable and safe to share.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator


class TreeParseError(ValueError):
    """Raised for malformed tree strings; ``offset`` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class BinaryTree:
    """An immutable binary tree node (or the empty tree).

    Use :data:`LEAF` and :func:`node` to build trees; direct construction
    bypasses hash-consing and is not supported.
    """

    __slots__ = ("left", "right", "node_count", "height", "_hash")

    left: "BinaryTree | None"
    right: "BinaryTree | None"
    node_count: int
    height: int

    def __init__(self, left: "BinaryTree | None", right: "BinaryTree | None"):
        if (left is None) != (right is None):
            raise ValueError("a node needs both subtrees; use LEAF for empty ones")
        self.left = left
        self.right = right
        if left is None or right is None:
            self.node_count = 0
            self.height = 0
            self._hash = hash(("tree", 0))
        else:
            self.node_count = 1 + left.node_count + right.node_count
            self.height = 1 + max(left.height, right.height)
            self._hash = hash((left._hash, self.node_count, right._hash))

    @property
    def is_empty(self) -> bool:
        return self.left is None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, BinaryTree):
            return NotImplemented
        if (
            self._hash != other._hash
            or self.node_count != other.node_count
            or self.height != other.height
        ):
            return False
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a.left is None or b.left is None:
                if (a.left is None) != (b.left is None):
                    return False
                continue
            if a._hash != b._hash or a.node_count != b.node_count:
                return False
            stack.append((a.left, b.left))
            stack.append((a.right, b.right))
        return True

    def __repr__(self) -> str:
        return f"parse({serialize(self)!r})"

    def __reduce__(self):
        return (parse, (serialize(self),))

    def __copy__(self) -> "BinaryTree":
        return self

    def __deepcopy__(self, memo) -> "BinaryTree":
        return self


LEAF = BinaryTree(None, None)
"""The empty tree."""

_INTERN: dict[tuple[int, int], BinaryTree] = {}


def node(left: BinaryTree = LEAF, right: BinaryTree = LEAF) -> BinaryTree:
    """Return the (interned) tree with the given subtrees."""
    key = (id(left), id(right))
    t = _INTERN.get(key)
    if t is None:
        t = BinaryTree(left, right)
        _INTERN[key] = t
    return t


def parse(text: str) -> BinaryTree:
    """Parse a tree string: ``.`` is empty, ``(<left><right>)`` is a node.

    Whitespace is ignored.  Raises :class:`TreeParseError` with the byte
    offset of the first offending character.
    """
    stack: list[list[BinaryTree]] = []
    root: BinaryTree | None = None
    for i, c in enumerate(text):
        if c.isspace():
            continue
        if root is not None:
            raise TreeParseError(f"trailing input {c!r}", i)
        if c == "(":
            stack.append([])
            continue
        if c == ".":
            done: BinaryTree | None = LEAF
        elif c == ")":
            if not stack:
                raise TreeParseError("unmatched ')'", i)
            frame = stack.pop()
            if len(frame) != 2:
                raise TreeParseError(
                    f"node needs exactly 2 subtrees, found {len(frame)}", i
                )
            done = node(frame[0], frame[1])
        else:
            raise TreeParseError(f"unexpected character {c!r}", i)
        while done is not None:
            if not stack:
                root = done
                done = None
            else:
                stack[-1].append(done)
                if len(stack[-1]) > 2:
                    raise TreeParseError("node has more than 2 subtrees", i)
                done = None
    if stack:
        raise TreeParseError("unclosed '('", len(text))
    if root is None:
        raise TreeParseError("empty input", len(text))
    return root


def serialize(t: BinaryTree) -> str:
    """Render a tree string; ``parse(serialize(t)) == t``."""
    out: list[str] = []
    stack: list[BinaryTree | str] = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, str):
            out.append(cur)
        elif cur.left is None:
            out.append(".")
        else:
            out.append("(")
            stack.append(")")
            stack.append(cur.right)
            stack.append(cur.left)
    return "".join(out)


def leaf_count(t: BinaryTree) -> int:
    """Number of empty positions; always ``node_count + 1``."""
    return t.node_count + 1


def subtree_at(t: BinaryTree, rank: int) -> BinaryTree:
    """Subtree rooted at the node with the given infix rank (1-based)."""
    if not 1 <= rank <= t.node_count:
        raise ValueError(f"rank {rank} out of range 1..{t.node_count}")
    cur = t
    while True:
        assert cur.left is not None and cur.right is not None
        root_rank = cur.left.node_count + 1
        if rank == root_rank:
            return cur
        if rank < root_rank:
            cur = cur.left
        else:
            rank -= root_rank
            cur = cur.right


def child_ranks(t: BinaryTree, rank: int) -> tuple[int | None, int | None]:
    """Infix ranks of the children of the node at ``rank``.

    Returns ``(left_rank, right_rank)`` with ``None`` for an empty child.
    """
    if not 1 <= rank <= t.node_count:
        raise ValueError(f"rank {rank} out of range 1..{t.node_count}")
    base = 0
    cur = t
    while True:
        assert cur.left is not None and cur.right is not None
        root_rank = base + cur.left.node_count + 1
        if rank == root_rank:
            break
        if rank < root_rank:
            cur = cur.left
        else:
            base = root_rank
            cur = cur.right
    left_rank = None
    if cur.left.node_count:
        left_rank = base + cur.left.left.node_count + 1  # type: ignore[union-attr]
    right_rank = None
    if cur.right.node_count:
        right_rank = rank + cur.right.left.node_count + 1  # type: ignore[union-attr]
    return (left_rank, right_rank)


def imbalance(t: BinaryTree, rank: int | None = None) -> int:
    """Imbalance (right height minus left height) of a node.

    With ``rank`` omitted, the root's imbalance; the tree must be nonempty.
    """
    sub = t if rank is None else subtree_at(t, rank)
    if sub.left is None or sub.right is None:
        raise ValueError("the empty tree has no imbalance")
    return sub.right.height - sub.left.height


def is_right_of(t: BinaryTree, x: int, y: int) -> bool:
    """Whether the node at rank ``x`` lies strictly right of the one at ``y``.

    Infix ranks order nodes left to right, so this is a rank comparison
    once both ranks are validated against the tree.
    """
    n = t.node_count
    for r in (x, y):
        if not 1 <= r <= n:
            raise ValueError(f"rank {r} out of range 1..{n}")
    return x > y


def mirror(t: BinaryTree) -> BinaryTree:
    """Reflect left-right; an involution."""
    if t.left is None or t.right is None:
        return t
    return node(mirror(t.right), mirror(t.left))


def iter_subtrees(t: BinaryTree) -> Iterator[tuple[int, BinaryTree]]:
    """Yield ``(rank, subtree)`` for every internal node in infix order."""
    rank = 0
    stack: list[BinaryTree] = []
    cur: BinaryTree | None = t
    while stack or (cur is not None and cur.left is not None):
        while cur is not None and cur.left is not None:
            stack.append(cur)
            cur = cur.left
        cur = stack.pop()
        rank += 1
        yield (rank, cur)
        cur = cur.right


def canopy(t: BinaryTree) -> str:
    """Orientation word of the inner leaves, left to right.

    Every empty position except the leftmost and rightmost contributes one
    letter: ``1`` if it is a left child, ``0`` if it is a right child.
    Trees with at most one node have the empty word.
    """
    if t.node_count <= 1:
        return ""
    bits: list[str] = []
    stack: list[tuple[BinaryTree, str]] = [(t, "")]
    while stack:
        cur, bit = stack.pop()
        if cur.left is None:
            bits.append(bit)
            continue
        stack.append((cur.right, "0"))
        stack.append((cur.left, "1"))
    return "".join(bits[1:-1])


def nar(t: BinaryTree) -> int:
    """Number of nodes with a nonempty right subtree.

    Equals the number of ``1`` letters in :func:`canopy` of the tree.
    """
    return sum(1 for _, sub in iter_subtrees(t) if sub.right.node_count)


_MAX_ENUM_NODES = 16


@lru_cache(maxsize=None)
def all_trees(n: int) -> tuple[BinaryTree, ...]:
    """All trees with ``n`` nodes, in a fixed deterministic order.

    Subtrees are shared across the memoized tables, so enumerating up to
    moderate sizes is cheap; ``n`` is capped to keep memory sane.
    """
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if n > _MAX_ENUM_NODES:
        raise ValueError(f"refusing to enumerate more than {_MAX_ENUM_NODES} nodes")
    if n == 0:
        return (LEAF,)
    return tuple(
        node(left, right)
        for k in range(n)
        for left in all_trees(k)
        for right in all_trees(n - 1 - k)
    )
