"""Compiled row updates for the mfi tables.

Rows are 1-based ``int32`` arrays of length ``n + 1``. A missing left end is
stored as ``0`` and a missing right end as ``n + 1``; the public model converts
these to NEG_INF/POS_INF. ``back`` receives, for every ``i``, the child pivot
position that produced the value (``0`` when none).
"""

import numpy as np
from numba import njit

from ._veb import EMPTY, veb_delete, veb_insert, veb_pred, veb_succ


@njit(cache=True, nogil=True)
def left_max_basic(rank, child_lo, child_hi, out, back):
    n = rank.shape[0] - 1
    for i in range(1, n + 1):
        best = 0
        arg = 0
        ri = rank[i]
        for j in range(1, i):
            if ri < rank[j] and child_hi[j] < i and child_lo[j] > best:
                best = child_lo[j]
                arg = j
        out[i] = best
        back[i] = arg


@njit(cache=True, nogil=True)
def right_min_basic(rank, child_lo, child_hi, out, back):
    n = rank.shape[0] - 1
    for i in range(1, n + 1):
        best = n + 1
        arg = 0
        ri = rank[i]
        for j in range(i + 1, n + 1):
            if ri < rank[j] and child_lo[j] > i and child_hi[j] < best:
                best = child_hi[j]
                arg = j
        out[i] = best
        back[i] = arg


@njit(cache=True)
def _clear(mins, maxs, size, k, other, scratch):
    while mins[0] != EMPTY:
        x = mins[0]
        veb_delete(mins, maxs, size, k, x, scratch)
        other[x] = 0


@njit(cache=True, nogil=True)
def left_max_veb(order, child_lo, child_hi, out, back, mins, maxs, size, k, scratch, other, tag):
    """Candidate intervals keyed by right end; returns the number of dict operations."""
    n = order.shape[0]
    ops = 0
    for t in range(n):
        i = order[t]
        p = veb_pred(mins, maxs, size, k, i, scratch)
        ops += 1
        if p == EMPTY:
            out[i] = 0
            back[i] = 0
        else:
            out[i] = other[p]
            back[i] = tag[p]
        rn = child_hi[i]
        if rn > n:
            continue
        ln = child_lo[i]
        while True:
            s = veb_succ(mins, maxs, size, k, rn - 1, scratch)
            ops += 1
            if s == EMPTY or other[s] > ln:
                break
            veb_delete(mins, maxs, size, k, s, scratch)
            other[s] = 0
            ops += 1
        p = veb_pred(mins, maxs, size, k, rn + 1, scratch)
        ops += 1
        if p == EMPTY or other[p] < ln:
            veb_insert(mins, maxs, size, k, rn)
            other[rn] = ln
            tag[rn] = i
            ops += 1
    _clear(mins, maxs, size, k, other, scratch)
    return ops


@njit(cache=True, nogil=True)
def right_min_veb(order, child_lo, child_hi, out, back, mins, maxs, size, k, scratch, other, tag):
    """Mirror of :func:`left_max_veb` with intervals keyed by left end."""
    n = order.shape[0]
    ops = 0
    for t in range(n):
        i = order[t]
        q = veb_succ(mins, maxs, size, k, i, scratch)
        ops += 1
        if q == EMPTY:
            out[i] = n + 1
            back[i] = 0
        else:
            out[i] = other[q]
            back[i] = tag[q]
        ln = child_lo[i]
        if ln < 1:
            continue
        rn = child_hi[i]
        while True:
            p = veb_pred(mins, maxs, size, k, ln + 1, scratch)
            ops += 1
            if p == EMPTY or other[p] < rn:
                break
            veb_delete(mins, maxs, size, k, p, scratch)
            other[p] = 0
            ops += 1
        s = veb_succ(mins, maxs, size, k, ln - 1, scratch)
        ops += 1
        if s == EMPTY or other[s] > rn:
            veb_insert(mins, maxs, size, k, ln)
            other[ln] = rn
            tag[ln] = i
            ops += 1
    _clear(mins, maxs, size, k, other, scratch)
    return ops


@njit(cache=True)
def seal_rows(lo_row, hi_row):
    """Collapse half-missing entries to the sentinel pair."""
    n = lo_row.shape[0] - 1
    for i in range(1, n + 1):
        if lo_row[i] == 0 or hi_row[i] == n + 1:
            lo_row[i] = 0
            hi_row[i] = n + 1


@njit(cache=True, nogil=True)
def minimal_pairs(lo, hi):
    """Indices of the inclusion-minimal pairs ``(lo[j], hi[j])``, sorted by ``lo``.

    Pairs with ``lo < 1`` or ``hi < lo`` are skipped; among identical pairs
    the smallest index wins.
    """
    top = 0
    for j in range(lo.shape[0]):
        if lo[j] > top:
            top = lo[j]
    best = np.full(top + 1, -1, dtype=np.int64)
    for j in range(lo.shape[0]):
        a = lo[j]
        if a < 1 or hi[j] < a:
            continue
        if best[a] < 0 or hi[j] < hi[best[a]]:
            best[a] = j
    keep = np.empty(top, dtype=np.int64)
    count = 0
    bound = 0
    have_bound = False
    for a in range(top, 0, -1):
        j = best[a]
        if j < 0:
            continue
        if not have_bound or hi[j] < bound:
            keep[count] = j
            count += 1
            bound = hi[j]
            have_bound = True
    return keep[:count][::-1].copy()
