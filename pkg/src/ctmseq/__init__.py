"""Cartesian-tree subsequence matching: minimal occurrence intervals of a pattern in a text."""

from .cartesian import CartesianTree, build_ct, heavy_mark, isomorphic
from .estimator import CartesianSubsequenceMatcher
from .exceptions import (
    CTMSeqError,
    DuplicateKey,
    EmptyInput,
    InvalidInterval,
    InvalidUniverse,
    NotFound,
    TooLarge,
    TracesUnavailable,
)
from .matcher import (
    Algorithm,
    MatchConfig,
    MatchResult,
    MfiTables,
    Traversal,
    extract_minimal,
    reconstruct_trace,
    solve,
)
from .model import (
    NEG_INF,
    POS_INF,
    UNBOUNDED,
    Interval,
    Pivot,
    Sequence,
    interval_contains,
    interval_strictly_contains,
    rank_encode,
)
from .oracle import oracle_mfi, oracle_solve
from .predecessor import Engine, IntervalDict

__all__ = [
    "Algorithm",
    "CTMSeqError",
    "CartesianSubsequenceMatcher",
    "CartesianTree",
    "DuplicateKey",
    "EmptyInput",
    "Engine",
    "Interval",
    "IntervalDict",
    "InvalidInterval",
    "InvalidUniverse",
    "MatchConfig",
    "MatchResult",
    "MfiTables",
    "NEG_INF",
    "NotFound",
    "POS_INF",
    "Pivot",
    "Sequence",
    "TooLarge",
    "TracesUnavailable",
    "Traversal",
    "UNBOUNDED",
    "build_ct",
    "extract_minimal",
    "heavy_mark",
    "interval_contains",
    "interval_strictly_contains",
    "isomorphic",
    "oracle_mfi",
    "oracle_solve",
    "rank_encode",
    "reconstruct_trace",
    "solve",
]

__version__ = "0.1.0"
