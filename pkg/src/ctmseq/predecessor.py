"""Predecessor dictionary over intervals.

Stores finite intervals ``[lo, hi]`` keyed by one endpoint (``hi`` by default)
with the other endpoint as payload, at most one interval per key. Two engines
answer the same queries: a van Emde Boas tree and an ordered set.
"""

from __future__ import annotations

import enum

import numpy as np
from sortedcontainers import SortedList

from . import _veb
from .exceptions import DuplicateKey, InvalidInterval, InvalidUniverse, NotFound
from .model import Interval

__all__ = [
    "Engine",
    "IntervalDict",
    "dict_new",
    "insert",
    "delete",
    "pred",
    "succ",
    "dict_clear",
]


class Engine(str, enum.Enum):
    VEB = "veb"
    ORDERED_SET = "ordered_set"


class _VEBKeys:
    def __init__(self, universe):
        self.tree = _veb.VEBTree(universe + 1)

    def add(self, x):
        self.tree.insert(x)

    def remove(self, x):
        self.tree.delete(x)

    def pred(self, x):
        return self.tree.pred(x)

    def succ(self, x):
        return self.tree.succ(max(x, -1))


class _SortedKeys:
    def __init__(self, universe):
        self.keys = SortedList()

    def add(self, x):
        self.keys.add(x)

    def remove(self, x):
        self.keys.remove(x)

    def pred(self, x):
        i = self.keys.bisect_left(x)
        return self.keys[i - 1] if i else None

    def succ(self, x):
        i = self.keys.bisect_right(x)
        return self.keys[i] if i < len(self.keys) else None


class IntervalDict:
    """Set of finite intervals with predecessor/successor queries on a key endpoint.

    Parameters
    ----------
    universe : int
        Largest admissible endpoint ``n``.
    engine : Engine or str
        ``"veb"`` or ``"ordered_set"``.
    key : {"hi", "lo"}
        Endpoint used as the search key.
    """

    def __init__(self, universe: int, engine=Engine.VEB, key: str = "hi"):
        if universe < 1:
            raise InvalidUniverse(f"universe must be >= 1, got {universe}")
        if key not in ("hi", "lo"):
            raise ValueError(f"key must be 'hi' or 'lo', got {key!r}")
        self.universe = int(universe)
        self.engine = Engine(engine)
        self.key = key
        self._keys = (_VEBKeys if self.engine is Engine.VEB else _SortedKeys)(universe)
        # payload[k] is the other endpoint of the interval keyed by k, 0 if absent
        self._other = np.zeros(self.universe + 2, dtype=np.int64)
        # opaque caller data per key; the matcher records the source pivot here
        self._tag = np.zeros(self.universe + 2, dtype=np.int64)
        self._stored: set[int] = set()
        self.ops = 0

    def __len__(self):
        return len(self._stored)

    def __iter__(self):
        for k in sorted(self._stored):
            yield self._interval(k)

    def __contains__(self, iv):
        k = self._key_of(iv)
        return k in self._stored and self._interval(k) == tuple(iv)

    def __repr__(self):
        return f"IntervalDict({self.engine.value}, key={self.key}, {list(self)})"

    @property
    def depth(self) -> int:
        """Recursion depth of the vEB engine (0 for the ordered set)."""
        return self._keys.tree.depth if self.engine is Engine.VEB else 0

    def _key_of(self, iv):
        return int(iv[1] if self.key == "hi" else iv[0])

    def _interval(self, k):
        o = int(self._other[k])
        return Interval._trusted(o, k) if self.key == "hi" else Interval._trusted(k, o)

    def _check(self, iv):
        lo, hi = iv
        if not (isinstance(lo, (int, np.integer)) and isinstance(hi, (int, np.integer))):
            raise InvalidInterval(f"only finite intervals can be stored, got {iv}")
        if not 1 <= lo <= hi <= self.universe:
            raise InvalidInterval(f"{iv} outside [1, {self.universe}]")

    def insert(self, iv, tag: int = 0) -> None:
        self._check(iv)
        self.ops += 1
        k = self._key_of(iv)
        if k in self._stored:
            raise DuplicateKey(f"key {k} already holds {self._interval(k)}")
        self._keys.add(k)
        self._stored.add(k)
        self._other[k] = iv[0] if self.key == "hi" else iv[1]
        self._tag[k] = tag

    def tag(self, iv) -> int:
        """Caller data attached to a stored interval at insertion."""
        return int(self._tag[self._key_of(iv)])

    def delete(self, iv) -> None:
        self.ops += 1
        k = self._key_of(iv)
        if iv not in self:
            raise NotFound(f"{tuple(iv)} is not stored")
        self._keys.remove(k)
        self._stored.discard(k)
        self._other[k] = 0

    def pred(self, x: int):
        """Stored interval with the largest key ``< x``, or ``None``."""
        self.ops += 1
        k = self._keys.pred(int(x))
        return None if k is None else self._interval(k)

    def succ(self, x: int):
        """Stored interval with the smallest key ``> x``, or ``None``."""
        self.ops += 1
        k = self._keys.succ(int(x))
        return None if k is None else self._interval(k)

    def clear(self) -> None:
        """Remove every entry in O(#entries) operations."""
        for k in list(self._stored):
            self._keys.remove(k)
            self._other[k] = 0
        self._stored.clear()


def dict_new(universe: int, engine=Engine.VEB) -> IntervalDict:
    return IntervalDict(universe, engine)


def insert(d: IntervalDict, iv) -> None:
    d.insert(iv)


def delete(d: IntervalDict, iv) -> None:
    d.delete(iv)


def pred(d: IntervalDict, x: int):
    return d.pred(x)


def succ(d: IntervalDict, x: int):
    return d.succ(x)


def dict_clear(d: IntervalDict) -> None:
    d.clear()
