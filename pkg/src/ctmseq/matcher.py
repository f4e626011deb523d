"""Minimal occurrence intervals under Cartesian-tree subsequence matching.

For every node ``v`` of ``CT(P)`` and text position ``i`` the tables hold the
minimal interval of ``T`` hosting a copy of the subtree ``P_v`` whose minimum
sits at ``i`` (the *minimal fixed-interval* of the pivot ``(v, i)``). Rows are
filled bottom-up from the children's rows, either by the quadratic scan or by
sweeping positions in descending text order while a predecessor dictionary
keeps the inclusion-minimal candidate intervals. The root row then yields the
answer.

Internally a row is an ``int32`` array of length ``n + 1`` (slot 0 unused)
where ``0`` stands for NEG_INF and ``n + 1`` for POS_INF.
"""

from __future__ import annotations

import enum
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .cartesian import NIL, CartesianTree, build_ct
from .exceptions import TracesUnavailable
from .model import (
    NEG_INF,
    POS_INF,
    UNBOUNDED,
    Interval,
    as_sequence,
)
from .predecessor import Engine, IntervalDict

__all__ = [
    "Algorithm",
    "Traversal",
    "MatchConfig",
    "MatchResult",
    "MfiTables",
    "TextIndex",
    "update_left_max_basic",
    "update_right_min_basic",
    "update_left_max_fast",
    "update_right_min_fast",
    "extract_minimal",
    "reconstruct_trace",
    "solve",
    "debug_asserts_enabled",
]

_ROW = np.int32


class Algorithm(str, enum.Enum):
    BASIC = "basic"
    VEB = "veb"
    BST = "bst"


class Traversal(str, enum.Enum):
    PLAIN = "plain"
    HEAVY_LIGHT = "heavy_light"


def debug_asserts_enabled() -> bool:
    return os.environ.get("CTMSEQ_DEBUG_ASSERTS", "") not in ("", "0")


@dataclass(frozen=True)
class MatchConfig:
    """Which row update to use and in which order to visit ``CT(P)``.

    ``want_traces`` needs every table kept, so it cannot be combined with the
    heavy-light traversal, which discards child rows as soon as possible.
    """

    algorithm: Algorithm = Algorithm.VEB
    traversal: Traversal = Traversal.HEAVY_LIGHT
    want_traces: bool = False

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "traversal", Traversal(self.traversal))
        if self.want_traces and self.traversal is Traversal.HEAVY_LIGHT:
            raise TracesUnavailable(
                "traces need the plain traversal; heavy-light discards child tables"
            )

    @property
    def name(self) -> str:
        suffix = "-HL" if self.traversal is Traversal.HEAVY_LIGHT else ""
        return f"{self.algorithm.value}{suffix}"


class TextIndex:
    """Text ranks padded to 1-based indexing plus positions by descending rank."""

    def __init__(self, text):
        seq = as_sequence(text)
        n = len(seq)
        self.sequence = seq
        self.n = n
        self.rank = np.zeros(n + 1, dtype=np.int64)
        self.rank[1:] = seq.ranks
        pos_of_rank = np.empty(n + 1, dtype=np.int64)
        pos_of_rank[seq.ranks] = np.arange(1, n + 1)
        self.order = np.ascontiguousarray(pos_of_rank[:0:-1])


def _text_index(T) -> TextIndex:
    return T if isinstance(T, TextIndex) else TextIndex(T)


class MfiTables:
    """Rows of left/right ends of minimal fixed-intervals for live pattern nodes."""

    def __init__(self, n: int, tree: CartesianTree, keep_backptrs: bool = False):
        self.n = n
        self.tree = tree
        self.L: dict[int, np.ndarray] = {}
        self.R: dict[int, np.ndarray] = {}
        self.keep_backptrs = keep_backptrs
        self.back_L: dict[int, np.ndarray] = {}
        self.back_R: dict[int, np.ndarray] = {}
        self._live: set[int] = set()
        self.live_rows = 0
        self.peak_live_rows = 0

    def _touch(self, v):
        self._live.add(v)
        self.live_rows = len(self._live)
        self.peak_live_rows = max(self.peak_live_rows, self.live_rows)

    def put_L(self, v, row, back=None):
        self.L[v] = row
        if self.keep_backptrs and back is not None:
            self.back_L[v] = back
        self._touch(v)

    def put_R(self, v, row, back=None):
        self.R[v] = row
        if self.keep_backptrs and back is not None:
            self.back_R[v] = back
        self._touch(v)

    def release(self, v) -> None:
        """Drop every row of node ``v``."""
        for d in (self.L, self.R, self.back_L, self.back_R):
            d.pop(v, None)
        self._live.discard(v)
        self.live_rows = len(self._live)

    def seal(self, v) -> None:
        _kernels.seal_rows(self.L[v], self.R[v])

    def child_rows(self, c):
        return self.L[c], self.R[c]

    def mfi(self, v: int, i: int) -> Interval:
        lo, hi = int(self.L[v][i]), int(self.R[v][i])
        if lo == 0 or hi == self.n + 1:
            return UNBOUNDED
        return Interval(lo, hi)

    def row(self, v: int) -> list[Interval]:
        """``mfi(v, i)`` for ``i = 1..n``."""
        return [self.mfi(v, i) for i in range(1, self.n + 1)]


@dataclass
class MatchResult:
    intervals: list[Interval]
    traces: Optional[list[tuple[int, ...]]] = None
    stats: dict = field(default_factory=dict)
    pivots: list[int] = field(default_factory=list)
    tables: Optional[MfiTables] = field(default=None, repr=False)

    def __len__(self):
        return len(self.intervals)


def _leaf_row(n):
    return np.arange(n + 1, dtype=_ROW)


def _empty_back(n):
    return np.zeros(n + 1, dtype=np.int64)


def update_left_max_basic(v: int, tree: CartesianTree, T, tables: MfiTables) -> None:
    """Quadratic scan: ``L[v][i]`` from the left child's rows."""
    n = tables.n
    c = int(tree.left[v])
    back = _empty_back(n)
    if c == NIL:
        tables.put_L(v, _leaf_row(n), back)
        return
    text = _text_index(T)
    out = np.zeros(n + 1, dtype=_ROW)
    lo, hi = tables.child_rows(c)
    _kernels.left_max_basic(text.rank, lo, hi, out, back)
    tables.put_L(v, out, back)


def update_right_min_basic(v: int, tree: CartesianTree, T, tables: MfiTables) -> None:
    """Quadratic scan: ``R[v][i]`` from the right child's rows."""
    n = tables.n
    c = int(tree.right[v])
    back = _empty_back(n)
    if c == NIL:
        tables.put_R(v, _leaf_row(n), back)
        return
    text = _text_index(T)
    out = np.full(n + 1, n + 1, dtype=_ROW)
    lo, hi = tables.child_rows(c)
    _kernels.right_min_basic(text.rank, lo, hi, out, back)
    tables.put_R(v, out, back)


def _assert_antichain(d: IntervalDict):
    ivs = list(d)
    for a, b in zip(ivs, ivs[1:]):
        # sorted by key, an antichain is strictly increasing in both ends
        assert a.lo < b.lo and a.hi < b.hi, f"nested intervals {a} and {b} in {d}"


def _left_max_generic(text, lo_child, hi_child, out, back, d, debug):
    # works on the dictionary's key level: keys are right ends, payload the left
    n = text.n
    keys, other, tag = d._keys, d._other, d._tag
    stored = d._stored
    ops = 0
    lo_list, hi_list = lo_child.tolist(), hi_child.tolist()
    for i in text.order.tolist():
        k = keys.pred(i)
        ops += 1
        if k is None:
            out[i] = 0
            back[i] = 0
        else:
            out[i] = other[k]
            back[i] = tag[k]
        rn = hi_list[i]
        if rn > n:
            continue
        ln = lo_list[i]
        # drop stored intervals containing [ln, rn]; they have right end >= rn
        while True:
            k = keys.succ(rn - 1)
            ops += 1
            if k is None or other[k] > ln:
                break
            keys.remove(k)
            stored.discard(k)
            other[k] = 0
            ops += 1
        k = keys.pred(rn + 1)
        ops += 1
        if k is None or other[k] < ln:
            keys.add(rn)
            stored.add(rn)
            other[rn] = ln
            tag[rn] = i
            ops += 1
        if debug:
            _assert_antichain(d)
    d.ops += ops


def _right_min_generic(text, lo_child, hi_child, out, back, d, debug):
    # mirror image: keys are left ends, payload the right
    n = text.n
    keys, other, tag = d._keys, d._other, d._tag
    stored = d._stored
    ops = 0
    lo_list, hi_list = lo_child.tolist(), hi_child.tolist()
    for i in text.order.tolist():
        k = keys.succ(i)
        ops += 1
        if k is None:
            out[i] = n + 1
            back[i] = 0
        else:
            out[i] = other[k]
            back[i] = tag[k]
        ln = lo_list[i]
        if ln < 1:
            continue
        rn = hi_list[i]
        while True:
            k = keys.pred(ln + 1)
            ops += 1
            if k is None or other[k] < rn:
                break
            keys.remove(k)
            stored.discard(k)
            other[k] = 0
            ops += 1
        k = keys.succ(ln - 1)
        ops += 1
        if k is None or other[k] > rn:
            keys.add(ln)
            stored.add(ln)
            other[ln] = rn
            tag[ln] = i
            ops += 1
        if debug:
            _assert_antichain(d)
    d.ops += ops


def _fast(side, v, tree, T, tables, d, debug):
    n = tables.n
    c = int(tree.left[v] if side == "L" else tree.right[v])
    put = tables.put_L if side == "L" else tables.put_R
    back = _empty_back(n)
    if c == NIL:
        put(v, _leaf_row(n), back)
        return 0
    expected_key = "hi" if side == "L" else "lo"
    if d.key != expected_key:
        raise ValueError(f"{side} updates need a dictionary keyed by {expected_key}")
    if len(d):
        raise ValueError("the dictionary must start empty")
    text = _text_index(T)
    lo, hi = tables.child_rows(c)
    # same slot-0 filler as the basic update, so rows compare bit for bit
    out = np.zeros(n + 1, dtype=_ROW) if side == "L" else np.full(n + 1, n + 1, dtype=_ROW)
    before = d.ops
    if d.engine is Engine.VEB and not debug:
        tree_ = d._keys.tree
        kernel = _kernels.left_max_veb if side == "L" else _kernels.right_min_veb
        d.ops += kernel(
            text.order, lo, hi, out, back,
            tree_.mins, tree_.maxs, tree_.size, tree_.k, tree_.scratch, d._other, d._tag,
        )
    else:
        generic = _left_max_generic if side == "L" else _right_min_generic
        generic(text, lo, hi, out, back, d, debug)
        d.clear()
    put(v, out, back)
    return d.ops - before


def update_left_max_fast(v, tree, T, tables, d, debug=None) -> int:
    """Sweep positions by descending text rank, answering ``L[v][i]`` by predecessor.

    ``d`` must be an empty dictionary keyed by right end; it is left empty.
    Returns the number of dictionary operations performed.
    """
    if debug is None:
        debug = debug_asserts_enabled()
    return _fast("L", v, tree, T, tables, d, debug)


def update_right_min_fast(v, tree, T, tables, d, debug=None) -> int:
    """Mirror of :func:`update_left_max_fast`; ``d`` is keyed by left end."""
    if debug is None:
        debug = debug_asserts_enabled()
    return _fast("R", v, tree, T, tables, d, debug)


def _minimal_pairs(lo_row, hi_row):
    """Inclusion-minimal finite pairs of two aligned int arrays, sorted by lo.

    Returns ``(lo, hi, index)`` arrays. Pairs with ``lo < 1`` or ``hi < lo``
    are ignored.
    """
    lo = np.asarray(lo_row, dtype=np.int64)
    hi = np.asarray(hi_row, dtype=np.int64)
    order = _kernels.minimal_pairs(lo, hi)
    return lo[order], hi[order], order


def extract_minimal(lo_row, hi_row) -> list[Interval]:
    """Inclusion-minimal, duplicate-free finite intervals, sorted by left end.

    The two inputs are aligned; an entry whose ends are NEG_INF/POS_INF is
    skipped.

    >>> extract_minimal([1, 3, 1], [9, 9, 5])
    [Interval(1, 5), Interval(3, 9)]
    """
    lo = [0 if x is NEG_INF else int(x) for x in lo_row]
    hi = [-1 if y is POS_INF else int(y) for y in hi_row]
    a, b, _ = _minimal_pairs(lo, hi)
    return [Interval(int(x), int(y)) for x, y in zip(a, b)]


def reconstruct_trace(interval, tables: MfiTables, pivot: Optional[int] = None):
    """A trace ``(lo, ..., hi)`` realising ``interval`` at the root of ``CT(P)``.

    ``pivot`` is the text position matched to the root; when omitted it is
    looked up in the root row.
    """
    tree = tables.tree
    root = tree.root
    if not tables.keep_backptrs or root not in tables.back_L:
        raise TracesUnavailable("back-pointer tables were not retained")
    lo, hi = int(interval[0]), int(interval[1])
    if pivot is None:
        hits = np.flatnonzero((tables.L[root] == lo) & (tables.R[root] == hi))
        if hits.size == 0:
            raise ValueError(f"{interval} is not a minimal fixed-interval of the root")
        pivot = int(hits[0])
    out: list[int] = []
    # in-order walk over (node, position) pairs
    stack = [(root, pivot, False)]
    while stack:
        v, i, expanded = stack.pop()
        if expanded:
            out.append(i)
            r = int(tree.right[v])
            if r != NIL:
                stack.append((r, int(tables.back_R[v][i]), False))
            continue
        stack.append((v, i, True))
        l_ = int(tree.left[v])
        if l_ != NIL:
            stack.append((l_, int(tables.back_L[v][i]), False))
    return tuple(out)


def solve(T, P, cfg: Optional[MatchConfig] = None, *, keep_tables: bool = False,
          tree: Optional[CartesianTree] = None) -> MatchResult:
    """All minimal occurrence intervals of ``P`` in ``T``.

    Parameters
    ----------
    T, P : Sequence or array-like of int
        Text and pattern; raw values are rank-encoded.
    cfg : MatchConfig, optional
        Defaults to the vEB update with heavy-light traversal.
    keep_tables : bool
        Attach the final :class:`MfiTables` to the result (plain traversal
        keeps every row).
    tree : CartesianTree, optional
        Pre-built ``CT(P)``, to skip rebuilding it across calls.
    """
    cfg = cfg or MatchConfig()
    start = time.perf_counter()
    text = _text_index(T)
    pattern = as_sequence(P)
    n, m = text.n, len(pattern)
    stats = {
        "algorithm": cfg.algorithm.value,
        "traversal": cfg.traversal.value,
        "n": n,
        "m": m,
        "dict_ops": 0,
        "max_node_dict_ops": 0,
        "peak_live_rows": 0,
    }
    if m > n:
        stats["wall_ms"] = (time.perf_counter() - start) * 1e3
        return MatchResult([], [] if cfg.want_traces else None, stats)

    if tree is None:
        tree = build_ct(pattern)
    heavy_light = cfg.traversal is Traversal.HEAVY_LIGHT
    tables = MfiTables(n, tree, keep_backptrs=cfg.want_traces)
    debug = debug_asserts_enabled()

    if cfg.algorithm is Algorithm.BASIC:
        def left(v):
            update_left_max_basic(v, tree, text, tables)
            return 0

        def right(v):
            update_right_min_basic(v, tree, text, tables)
            return 0
    else:
        engine = Engine.VEB if cfg.algorithm is Algorithm.VEB else Engine.ORDERED_SET
        by_hi = IntervalDict(n, engine, key="hi")
        by_lo = IntervalDict(n, engine, key="lo")

        def left(v):
            return _fast("L", v, tree, text, tables, by_hi, debug)

        def right(v):
            return _fast("R", v, tree, text, tables, by_lo, debug)

    lefts, rights = tree.left.tolist(), tree.right.tolist()
    total = worst = 0
    for v in tree.postorder(heavy_first=heavy_light):
        ops = left(v)
        if heavy_light and lefts[v] != NIL:
            tables.release(lefts[v])
        ops += right(v)
        if heavy_light and rights[v] != NIL:
            tables.release(rights[v])
        tables.seal(v)
        total += ops
        if ops > worst:
            worst = ops
    stats["dict_ops"] = total
    stats["max_node_dict_ops"] = worst

    root = tree.root
    lo, hi, piv = _minimal_pairs(tables.L[root], tables.R[root])
    intervals = [Interval._trusted(a, b) for a, b in zip(lo.tolist(), hi.tolist())]
    pivots = piv.tolist()
    traces = None
    if cfg.want_traces:
        traces = [reconstruct_trace(iv, tables, p) for iv, p in zip(intervals, pivots)]
    stats["peak_live_rows"] = tables.peak_live_rows
    stats["wall_ms"] = (time.perf_counter() - start) * 1e3
    return MatchResult(
        intervals,
        traces,
        stats,
        pivots,
        tables if (keep_tables or cfg.want_traces) else None,
    )
