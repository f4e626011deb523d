"""Brute-force reference answers by enumerating subscript sequences.

Only meant for small instances: every ``m``-subset of text positions is tried,
so cost grows like ``C(n, m)``. A budget guard raises :class:`TooLarge`
instead of running away.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

from .cartesian import build_ct, isomorphic
from .exceptions import TooLarge
from .model import UNBOUNDED, Interval, Pivot, as_sequence, interval_strictly_contains

__all__ = ["DEFAULT_BUDGET", "OracleResult", "oracle_solve", "oracle_mfi", "fixed_interval_candidates"]

DEFAULT_BUDGET = 10**7


@dataclass
class OracleResult:
    all_traces: list[tuple[int, ...]]
    occurrence_intervals: set[Interval]
    minimal_intervals: list[Interval]
    mfi_map: dict[Pivot, Interval] = field(default_factory=dict)


def _minimal(spans) -> list[Interval]:
    spans = set(spans)
    keep = [s for s in spans if not any(interval_strictly_contains(s, t) for t in spans)]
    return sorted(Interval(*s) for s in keep)


class _ShapeMatcher:
    """Cache of ``CT(T_I) == CT(target)`` keyed by the values of ``T_I``.

    Sequences with the same relative order have the same Cartesian tree; the
    tree of each new order pattern is built and compared once. Raw value
    tuples are memoised on top of that while the memo stays small.
    """

    _MEMO_LIMIT = 1 << 16

    def __init__(self, target_ranks):
        self.target = build_ct(target_ranks)
        self.by_order: dict[tuple, bool] = {}
        self.by_values: dict[tuple, bool] = {}

    def __call__(self, values: tuple) -> bool:
        hit = self.by_values.get(values)
        if hit is not None:
            return hit
        key = tuple(sorted(range(len(values)), key=values.__getitem__))
        hit = self.by_order.get(key)
        if hit is None:
            hit = self.by_order[key] = isomorphic(build_ct(values), self.target)
        if len(self.by_values) < self._MEMO_LIMIT:
            self.by_values[values] = hit
        return hit


@lru_cache(maxsize=256)
def _shape_matcher(target: tuple) -> _ShapeMatcher:
    return _ShapeMatcher(target)


@lru_cache(maxsize=64)
def _combinations(n: int, m: int) -> Optional[tuple]:
    """1-based ``m``-subsets of ``1..n``, materialised when there are few."""
    if comb(n, m) > 1 << 14:
        return None
    return tuple(itertools.combinations(range(1, n + 1), m))


def _matching(ranks: list, target: tuple):
    """Position tuples (1-based, lexicographic) whose subsequence has the target's tree."""
    n, m = len(ranks), len(target)
    same_shape = _shape_matcher(target)
    combos = _combinations(n, m) or itertools.combinations(range(1, n + 1), m)
    padded = [0] + ranks
    for combo in combos:
        if same_shape(tuple([padded[i] for i in combo])):
            yield combo


def _check_budget(n, m, budget):
    if comb(n, m) > budget:
        raise TooLarge(f"C({n}, {m}) = {comb(n, m)} subsequences exceeds budget {budget}")


def oracle_solve(T, P, budget: int = DEFAULT_BUDGET, with_mfi: bool = False) -> OracleResult:
    """Enumerate all traces of ``P`` in ``T`` in lexicographic order.

    Occurrence intervals are represented by the trace spans; any superinterval
    of a span is also an occurrence interval, but only the minimal ones are
    ever compared. With ``with_mfi`` the minimal fixed-interval of every pivot
    is computed as well.
    """
    text = as_sequence(T)
    pattern = as_sequence(P)
    n, m = len(text), len(pattern)
    if m > n:
        return OracleResult([], set(), [], {})
    _check_budget(n, m, budget)
    traces = list(_matching(text.ranks.tolist(), tuple(pattern.ranks.tolist())))
    spans = {Interval(t[0], t[-1]) for t in traces}
    mfi_map = all_mfi(text, pattern, budget) if with_mfi else {}
    return OracleResult(traces, spans, _minimal(spans), mfi_map)


def _pivot_spans(text, pattern, tree, v, budget):
    """``(pivot position, lo, hi)`` for every copy of ``P_v`` in ``T``."""
    n = len(text)
    a, b = tree.subtree_span(v)
    size = b - a + 1
    if size > n:
        return []
    _check_budget(n, size, budget)
    at = v - a  # index of the subtree minimum inside a trace
    target = tuple(pattern.ranks[a - 1 : b].tolist())
    return [(c[at], c[0], c[-1]) for c in _matching(text.ranks.tolist(), target)]


def fixed_interval_candidates(T, P, budget: int = DEFAULT_BUDGET) -> dict[Pivot, list[Interval]]:
    """Inclusion-minimal fixed-intervals of every pivot, as enumerated.

    A pivot with no fixed-interval maps to an empty list. The minimal one is
    unique whenever it exists, so every list should have length at most one;
    this function does not assume that.
    """
    text = as_sequence(T)
    pattern = as_sequence(P)
    n = len(text)
    tree = build_ct(pattern)
    out = {}
    for v in range(1, len(pattern) + 1):
        spans: dict[int, set] = {i: set() for i in range(1, n + 1)}
        for i, a, b in _pivot_spans(text, pattern, tree, v, budget):
            spans[i].add((a, b))
        for i in range(1, n + 1):
            out[Pivot(v, i)] = _minimal(spans[i])
    return out


def all_mfi(T, P, budget: int = DEFAULT_BUDGET) -> dict[Pivot, Interval]:
    out = {}
    for pv, cands in fixed_interval_candidates(T, P, budget).items():
        if len(cands) > 1:
            raise AssertionError(f"pivot {pv} has {len(cands)} minimal fixed-intervals: {cands}")
        out[pv] = cands[0] if cands else UNBOUNDED
    return out


def oracle_mfi(T, P, pv, budget: int = DEFAULT_BUDGET) -> Interval:
    """Minimal fixed-interval of one pivot ``(node, pos)`` by enumeration."""
    text = as_sequence(T)
    pattern = as_sequence(P)
    v, i = pv
    # the pivot must hold the subtree minimum, i.e. sit where v sits
    spans = [(a, b) for p, a, b in _pivot_spans(text, pattern, build_ct(pattern), v, budget) if p == i]
    found = _minimal(spans)
    if len(found) > 1:
        raise AssertionError(f"pivot {tuple(pv)} has {len(found)} minimal fixed-intervals: {found}")
    return found[0] if found else UNBOUNDED
