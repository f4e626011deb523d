"""Cartesian trees over rank-encoded sequences.

Node ``v`` of ``CT(S)`` is position ``v`` of ``S``; the tree is a min-heap on
ranks whose in-order traversal is ``1, 2, ..., len(S)``. Arrays are 1-based:
slot 0 is unused and missing links hold :data:`NIL`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyInput
from .model import as_sequence

__all__ = ["NIL", "CartesianTree", "build_ct", "heavy_mark", "isomorphic"]

NIL = -1


@dataclass(frozen=True, eq=False)
class CartesianTree:
    root: int
    left: np.ndarray
    right: np.ndarray
    parent: np.ndarray
    size: np.ndarray
    heavy: np.ndarray

    def __len__(self) -> int:
        return len(self.left) - 1

    def postorder(self, heavy_first: bool = False) -> list[int]:
        """Children before parents.

        With ``heavy_first`` the heavy child of every two-child node is
        visited before its light sibling; otherwise left before right.
        """
        left, right, heavy = self.left, self.right, self.heavy
        out = []
        stack = [(self.root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                out.append(v)
                continue
            stack.append((v, True))
            a, b = int(left[v]), int(right[v])
            if heavy_first and a != NIL and b != NIL and heavy[b]:
                a, b = b, a
            # pushed in reverse so that `a` is expanded first
            if b != NIL:
                stack.append((b, False))
            if a != NIL:
                stack.append((a, False))
        return out

    def subtree_span(self, v: int) -> tuple[int, int]:
        """Leftmost and rightmost positions of the subtree rooted at ``v``."""
        lo = v
        while self.left[lo] != NIL:
            lo = int(self.left[lo])
        return lo, lo + int(self.size[v]) - 1

    def light_count_max(self) -> int:
        """Largest number of light nodes on any root-to-leaf path."""
        best = 0
        stack = [(self.root, 0)]
        while stack:
            v, c = stack.pop()
            c += 0 if self.heavy[v] else 1
            kids = [int(u) for u in (self.left[v], self.right[v]) if u != NIL]
            if not kids:
                best = max(best, c)
            stack.extend((u, c) for u in kids)
        return best

    def to_parens(self) -> str:
        """Parenthesised form, e.g. ``((1)2((3)4(5)))`` for ``CT(9 2 17 4 13)``."""
        parts = []
        stack: list = [self.root]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                parts.append(item)
                continue
            v = int(item)
            stack.append(")")
            if self.right[v] != NIL:
                stack.append(int(self.right[v]))
            stack.append(str(v))
            if self.left[v] != NIL:
                stack.append(int(self.left[v]))
            stack.append("(")
        return "".join(parts)


def build_ct(s) -> CartesianTree:
    """Build ``CT(s)`` in linear time with the rightmost-spine stack."""
    seq = as_sequence(s)
    ranks = seq.ranks
    n = len(ranks)
    if n == 0:
        raise EmptyInput("cannot build a Cartesian tree of an empty sequence")
    left = np.full(n + 1, NIL, dtype=np.int64)
    right = np.full(n + 1, NIL, dtype=np.int64)
    parent = np.full(n + 1, NIL, dtype=np.int64)
    stack: list[int] = []
    for v in range(1, n + 1):
        r = ranks[v - 1]
        last = NIL
        while stack and ranks[stack[-1] - 1] > r:
            last = stack.pop()
        if last != NIL:
            left[v] = last
            parent[last] = v
        if stack:
            right[stack[-1]] = v
            parent[v] = stack[-1]
        stack.append(v)
    root = stack[0]

    size = np.ones(n + 1, dtype=np.int64)
    size[0] = 0
    tree = CartesianTree(root, left, right, parent, size, np.zeros(n + 1, dtype=bool))
    for v in tree.postorder():
        for c in (left[v], right[v]):
            if c != NIL:
                size[v] += size[c]
    return heavy_mark(tree)


def heavy_mark(t: CartesianTree) -> CartesianTree:
    """Mark the root and, at every node, the child visited first as heavy.

    The left child is heavy only when its subtree is strictly larger; equal
    sizes make the right child heavy.
    """
    heavy = np.zeros(len(t.left), dtype=bool)
    heavy[t.root] = True
    for v in range(1, len(t) + 1):
        a, b = t.left[v], t.right[v]
        if a != NIL and b != NIL:
            heavy[a if t.size[a] > t.size[b] else b] = True
        elif a != NIL:
            heavy[a] = True
        elif b != NIL:
            heavy[b] = True
    return CartesianTree(t.root, t.left, t.right, t.parent, t.size, heavy)


def isomorphic(a: CartesianTree, b: CartesianTree) -> bool:
    """Ordered-tree isomorphism by simultaneous traversal."""
    if len(a) != len(b):
        return False
    stack = [(a.root, b.root)]
    while stack:
        u, v = stack.pop()
        if (u == NIL) != (v == NIL):
            return False
        if u == NIL:
            continue
        if a.size[u] != b.size[v]:
            return False
        stack.append((int(a.left[u]), int(b.left[v])))
        stack.append((int(a.right[u]), int(b.right[v])))
    return True
