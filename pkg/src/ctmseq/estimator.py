"""scikit-learn style front end: fit on a pattern, predict on texts."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .cartesian import build_ct
from .matcher import MatchConfig, MatchResult, solve
from .validation import check_sequence


class CartesianSubsequenceMatcher(BaseEstimator):
    """Find minimal occurrence intervals of a fitted pattern in texts.

    Parameters
    ----------
    algorithm : {"veb", "bst", "basic"}, default="veb"
        Row update. ``"basic"`` is the quadratic scan; the other two sweep the
        text with a predecessor dictionary (van Emde Boas tree or ordered set).
    traversal : {"heavy_light", "plain"}, default="heavy_light"
        Order in which pattern nodes are processed. Heavy-light keeps only
        O(log m) rows alive.
    return_traces : bool, default=False
        Also reconstruct one trace per interval. Requires ``traversal="plain"``.

    Attributes
    ----------
    pattern_ : Sequence
        Rank-encoded pattern.
    tree_ : CartesianTree
        Cartesian tree of the pattern.
    config_ : MatchConfig
    result_ : MatchResult
        Result of the most recent ``predict`` or ``match`` call.

    Examples
    --------
    >>> m = CartesianSubsequenceMatcher().fit([9, 2, 17, 4, 13])
    >>> m.predict([11, 3, 8, 6, 16, 19, 5, 15, 21, 24]).tolist()
    [[1, 5], [3, 9]]
    """

    def __init__(self, algorithm="veb", traversal="heavy_light", return_traces=False):
        self.algorithm = algorithm
        self.traversal = traversal
        self.return_traces = return_traces

    def fit(self, X, y=None):
        """Store the pattern ``X`` and its Cartesian tree."""
        self.config_ = MatchConfig(self.algorithm, self.traversal, bool(self.return_traces))
        self.pattern_ = check_sequence(X, "pattern")
        self.tree_ = build_ct(self.pattern_)
        self.n_features_in_ = len(self.pattern_)
        return self

    def match(self, text) -> MatchResult:
        check_is_fitted(self, "tree_")
        t = check_sequence(text, "text")
        self.result_ = solve(t, self.pattern_, self.config_, tree=self.tree_)
        return self.result_

    def predict(self, X) -> np.ndarray:
        """Intervals as an ``(k, 2)`` integer array of 1-based ``[lo, hi]`` rows."""
        res = self.match(X)
        return np.array([[iv.lo, iv.hi] for iv in res.intervals], dtype=np.int64).reshape(-1, 2)

    def predict_traces(self, X) -> list[tuple[int, ...]]:
        if not self.return_traces:
            raise ValueError("construct the matcher with return_traces=True")
        return self.match(X).traces
