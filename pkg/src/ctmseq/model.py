"""Shared domain types: rank-encoded sequences, intervals and pivots.

Positions are 1-based everywhere in the public API. The "no interval" value is
the pair ``(NEG_INF, POS_INF)``; those two sentinels are dedicated objects that
order below/above every integer, so they can never collide with a real
position.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .exceptions import EmptyInput, InvalidInterval

__all__ = [
    "NEG_INF",
    "POS_INF",
    "Bound",
    "Interval",
    "UNBOUNDED",
    "Pivot",
    "Sequence",
    "rank_encode",
    "as_sequence",
    "interval_contains",
    "interval_strictly_contains",
]


@functools.total_ordering
class _Infinity:
    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other._sign == self._sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self._sign < other._sign
        return self._sign < 0

    def __hash__(self):
        return hash(("ctmseq-inf", self._sign))

    def __repr__(self):
        return "NEG_INF" if self._sign < 0 else "POS_INF"

    def __str__(self):
        return "-inf" if self._sign < 0 else "inf"

    def __reduce__(self):
        return (_infinity, (self._sign,))


def _infinity(sign):
    return NEG_INF if sign < 0 else POS_INF


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(+1)

Bound = Union[int, _Infinity]


class _IntervalBase(NamedTuple):
    lo: Bound
    hi: Bound


class Interval(_IntervalBase):
    """Closed interval ``[lo, hi]`` of text positions.

    Either both endpoints are finite with ``1 <= lo <= hi``, or the interval is
    the sentinel pair ``[NEG_INF, POS_INF]`` meaning "no fixed-interval".
    Compares equal to the plain tuple ``(lo, hi)``.
    """

    __slots__ = ()

    def __new__(cls, lo, hi):
        lo_inf = isinstance(lo, _Infinity)
        hi_inf = isinstance(hi, _Infinity)
        if lo_inf or hi_inf:
            if not (lo is NEG_INF and hi is POS_INF):
                raise InvalidInterval(f"mixed or misplaced sentinels: [{lo}, {hi}]")
            return super().__new__(cls, lo, hi)
        lo, hi = int(lo), int(hi)
        if not 1 <= lo <= hi:
            raise InvalidInterval(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
        return super().__new__(cls, lo, hi)

    @classmethod
    def _trusted(cls, lo: int, hi: int) -> "Interval":
        """Skip validation for endpoints already known to be well formed."""
        return tuple.__new__(cls, (lo, hi))

    @property
    def is_finite(self) -> bool:
        return self.lo is not NEG_INF

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


UNBOUNDED = Interval(NEG_INF, POS_INF)


class Pivot(NamedTuple):
    """A pattern node paired with the text position that hosts its subtree minimum."""

    node: int
    pos: int


def interval_contains(a, b) -> bool:
    """True iff ``b`` is a subset of ``a``; sentinels act as unbounded ends."""
    return a[0] <= b[0] and b[1] <= a[1]


def interval_strictly_contains(a, b) -> bool:
    """True iff ``b`` is a proper subset of ``a``."""
    return interval_contains(a, b) and tuple(a) != tuple(b)


@dataclass(frozen=True, eq=False)
class Sequence:
    """A text or pattern: raw integer values plus their rank encoding.

    ``ranks`` is a permutation of ``1..len`` ordering positions by
    ``(value, index)``, so equal raw values are broken left-to-right and every
    downstream algorithm can assume distinct characters.
    """

    values: np.ndarray
    ranks: np.ndarray

    def __len__(self) -> int:
        return len(self.ranks)

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return np.array_equal(self.ranks, other.ranks) and np.array_equal(
            self.values, other.values
        )

    __hash__ = None

    def __repr__(self):
        return f"Sequence(values={self.values.tolist()}, ranks={self.ranks.tolist()})"

    def subsequence(self, positions) -> "Sequence":
        """Rank-encode the characters at the given 1-based positions."""
        idx = np.asarray(positions, dtype=np.int64) - 1
        return rank_encode(self.values[idx])


def rank_encode(raw) -> Sequence:
    """Encode raw integers into ranks ``1..len`` with index tie-breaking.

    >>> rank_encode([9, 2, 17, 4, 13]).ranks.tolist()
    [3, 1, 5, 2, 4]
    """
    values = np.array(raw, dtype=np.int64).reshape(-1)
    if values.size == 0:
        raise EmptyInput("cannot rank-encode an empty sequence")
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=np.int64)
    ranks[order] = np.arange(1, values.size + 1, dtype=np.int64)
    values.flags.writeable = False
    ranks.flags.writeable = False
    return Sequence(values, ranks)


def as_sequence(x) -> Sequence:
    """Pass a :class:`Sequence` through; rank-encode anything else."""
    if isinstance(x, Sequence):
        return x
    return rank_encode(x)
