"""Van Emde Boas tree stored in flat arrays, with numba-compiled operations.

A node over a universe of ``2**k`` keys keeps its own ``min``/``max`` (the
minimum is not stored in any cluster) plus, for ``k > 1``, a summary over
``2**ceil(k/2)`` cluster ids and ``2**ceil(k/2)`` clusters over
``2**floor(k/2)`` low bits. All clusters of one node have the same shape, so a
whole tree is laid out depth-first in one array and cluster ``c`` of the node
at ``off`` sits at ``off + 1 + size[hi] + c * size[lo]``. Empty is ``-1``.

Every function here takes the arrays explicitly so the matcher kernels can
call them without Python in the loop.
"""

from functools import lru_cache

import numpy as np
from numba import njit

EMPTY = -1


@lru_cache(maxsize=None)
def layout_sizes(kmax: int) -> np.ndarray:
    """Node counts of a flattened tree for every ``k`` up to ``kmax`` (shared, read-only)."""
    size = np.zeros(kmax + 1, dtype=np.int64)
    size[0] = 1
    if kmax >= 1:
        size[1] = 1
    for k in range(2, kmax + 1):
        hi = (k + 1) // 2
        lo = k // 2
        size[k] = 1 + size[hi] + (1 << hi) * size[lo]
    size.flags.writeable = False
    return size


def universe_bits(universe: int) -> int:
    """Smallest ``k >= 1`` with ``2**k >= universe``."""
    return max(1, int(universe - 1).bit_length())


def depth(k: int) -> int:
    """Number of node levels on a root-to-base path."""
    d = 1
    while k > 1:
        k = (k + 1) // 2
        d += 1
    return d


def allocate(k: int):
    size = layout_sizes(k)
    mins = np.full(size[k], EMPTY, dtype=np.int64)
    maxs = np.full(size[k], EMPTY, dtype=np.int64)
    return mins, maxs, size


@njit(cache=True)
def _cluster(size, off, k, c):
    hi = (k + 1) >> 1
    lo = k >> 1
    return off + 1 + size[hi] + c * size[lo]


@njit(cache=True)
def veb_insert(mins, maxs, size, k, x):
    off = 0
    while True:
        if mins[off] == EMPTY:
            mins[off] = x
            maxs[off] = x
            return
        if x < mins[off]:
            x, mins[off] = mins[off], x
        if x > maxs[off]:
            maxs[off] = x
        if k == 1:
            return
        lo = k >> 1
        h = x >> lo
        l = x & ((1 << lo) - 1)
        c = _cluster(size, off, k, h)
        if mins[c] == EMPTY:
            # O(1) insert into the empty cluster, then record it in the summary
            mins[c] = l
            maxs[c] = l
            off, k, x = off + 1, (k + 1) >> 1, h
        else:
            off, k, x = c, lo, l


@njit(cache=True)
def veb_delete(mins, maxs, size, k, x, scratch):
    """Remove ``x``, which must be present."""
    # descend recording (off, k, x) per level, then fix maxima bottom-up
    off = 0
    top = 0
    while True:
        if mins[off] == maxs[off]:
            mins[off] = EMPTY
            maxs[off] = EMPTY
            break
        if k == 1:
            mins[off] = 1 if x == 0 else 0
            maxs[off] = mins[off]
            break
        lo = k >> 1
        if x == mins[off]:
            first = mins[off + 1]
            x = (first << lo) | mins[_cluster(size, off, k, first)]
            mins[off] = x
        scratch[top] = off
        scratch[top + 1] = k
        scratch[top + 2] = x
        top += 3
        h = x >> lo
        c = _cluster(size, off, k, h)
        if mins[c] == maxs[c]:
            mins[c] = EMPTY
            maxs[c] = EMPTY
            off, k, x = off + 1, (k + 1) >> 1, h
        else:
            off, k, x = c, lo, x & ((1 << lo) - 1)
    while top > 0:
        top -= 3
        off = scratch[top]
        k = scratch[top + 1]
        x = scratch[top + 2]
        if x != maxs[off]:
            continue
        lo = k >> 1
        h = x >> lo
        c = _cluster(size, off, k, h)
        if mins[c] == EMPTY:
            smax = maxs[off + 1]
            if smax == EMPTY:
                maxs[off] = mins[off]
            else:
                maxs[off] = (smax << lo) | maxs[_cluster(size, off, k, smax)]
        else:
            maxs[off] = (h << lo) | maxs[c]


@njit(cache=True)
def veb_succ(mins, maxs, size, k, x, scratch):
    """Smallest stored key strictly greater than ``x`` (``x`` may be -1)."""
    off = 0
    prefix = 0
    top = 0
    res = EMPTY
    while True:
        if mins[off] == EMPTY or x >= maxs[off]:
            res = EMPTY
            break
        if x < mins[off]:
            res = prefix | mins[off]
            break
        if k == 1:
            res = prefix | 1
            break
        lo = k >> 1
        h = x >> lo
        l = x & ((1 << lo) - 1)
        c = _cluster(size, off, k, h)
        if maxs[c] != EMPTY and l < maxs[c]:
            off, k, x, prefix = c, lo, l, prefix | (h << lo)
        else:
            # next non-empty cluster comes from the summary; resolve on unwind
            scratch[top] = off
            scratch[top + 1] = k
            scratch[top + 2] = prefix
            top += 3
            off, k, x, prefix = off + 1, (k + 1) >> 1, h, 0
    while top > 0:
        top -= 3
        if res == EMPTY:
            continue
        off = scratch[top]
        k = scratch[top + 1]
        lo = k >> 1
        res = scratch[top + 2] | (res << lo) | mins[_cluster(size, off, k, res)]
    return res


@njit(cache=True)
def veb_pred(mins, maxs, size, k, x, scratch):
    """Largest stored key strictly less than ``x`` (``x`` may exceed the universe)."""
    off = 0
    prefix = 0
    top = 0
    res = EMPTY
    while True:
        if mins[off] == EMPTY or x <= mins[off]:
            res = EMPTY
            break
        if x > maxs[off]:
            res = prefix | maxs[off]
            break
        if k == 1:
            res = prefix
            break
        lo = k >> 1
        h = x >> lo
        l = x & ((1 << lo) - 1)
        c = _cluster(size, off, k, h)
        if mins[c] != EMPTY and l > mins[c]:
            off, k, x, prefix = c, lo, l, prefix | (h << lo)
        else:
            scratch[top] = off
            scratch[top + 1] = k
            scratch[top + 2] = prefix
            top += 3
            off, k, x, prefix = off + 1, (k + 1) >> 1, h, 0
    while top > 0:
        top -= 3
        off = scratch[top]
        k = scratch[top + 1]
        if res == EMPTY:
            # only the node minimum, which lives outside the clusters, remains
            res = scratch[top + 2] | mins[off]
        else:
            lo = k >> 1
            res = scratch[top + 2] | (res << lo) | maxs[_cluster(size, off, k, res)]
    return res


def new_scratch(k: int) -> np.ndarray:
    return np.zeros(3 * (depth(k) + 1), dtype=np.int64)


class VEBTree:
    """Integer set over ``0 .. 2**k - 1`` with O(log log U) pred/succ."""

    def __init__(self, universe: int):
        self.k = universe_bits(universe)
        self.universe = 1 << self.k
        self.mins, self.maxs, self.size = allocate(self.k)
        self.scratch = new_scratch(self.k)

    @property
    def depth(self) -> int:
        return depth(self.k)

    def __bool__(self):
        return bool(self.mins[0] != EMPTY)

    def min(self):
        x = int(self.mins[0])
        return None if x == EMPTY else x

    def max(self):
        x = int(self.maxs[0])
        return None if x == EMPTY else x

    def insert(self, x: int) -> None:
        veb_insert(self.mins, self.maxs, self.size, self.k, x)

    def delete(self, x: int) -> None:
        veb_delete(self.mins, self.maxs, self.size, self.k, x, self.scratch)

    def pred(self, x: int):
        y = veb_pred(self.mins, self.maxs, self.size, self.k, x, self.scratch)
        return None if y == EMPTY else int(y)

    def succ(self, x: int):
        y = veb_succ(self.mins, self.maxs, self.size, self.k, x, self.scratch)
        return None if y == EMPTY else int(y)
