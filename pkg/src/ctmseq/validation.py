"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numpy as np

from .exceptions import EmptyInput
from .model import Sequence, rank_encode

__all__ = ["check_sequence", "check_positive_int"]


def check_sequence(x, name: str = "sequence") -> Sequence:
    """Validate a 1-D integer array-like and rank-encode it.

    Floats are rejected rather than truncated; quantise before calling.
    """
    if isinstance(x, Sequence):
        return x
    arr = np.asarray(x)
    if arr.dtype.kind == "f" and not isinstance(x, np.ndarray):
        # numpy promotes Python ints beyond 64 bits to float; keep them exact
        arr = np.asarray(x, dtype=object)
    if arr.ndim == 0:
        raise TypeError(f"{name} must be 1-D, got a scalar")
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyInput(f"{name} is empty")
    if arr.dtype == bool or not np.issubdtype(arr.dtype, np.integer):
        if arr.dtype == object and all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in arr):
            try:
                arr = arr.astype(np.int64)
            except OverflowError:
                raise ValueError(f"{name} has values outside the 64-bit range") from None
        else:
            raise TypeError(f"{name} must contain integers, got dtype {arr.dtype}")
    if arr.dtype == np.uint64 and arr.size and arr.max() > np.iinfo(np.int64).max:
        raise ValueError(f"{name} has values outside the 64-bit range")
    return rank_encode(arr.astype(np.int64))


def check_positive_int(x, name: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1:
        raise ValueError(f"{name} must be a positive integer, got {x!r}")
    return int(x)
