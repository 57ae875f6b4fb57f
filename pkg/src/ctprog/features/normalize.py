"""Min-max feature normalization fitted on training rows only."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_array, check_is_fitted


class MinMaxNormalizer(BaseEstimator):
    """x' = (x - min) / (max - min) with train-set extrema.

    Constant training columns map to 0 everywhere; values outside the
    training range are not clamped, so test rows may fall outside [0, 1].
    """

    def __init__(self):
        self.min_ = None
        self.max_ = None

    def fit(self, X):
        X = check_array(X)
        self.min_ = X.min(axis=0)
        self.max_ = X.max(axis=0)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "min_")
        X = check_array(X)
        span = self.max_ - self.min_
        out = np.zeros_like(X, dtype=float)
        live = span > 0
        out[:, live] = (X[:, live] - self.min_[live]) / span[live]
        return out

    def fit_transform(self, X) -> np.ndarray:
        return self.fit(X).transform(X)

    def to_dict(self) -> dict:
        check_is_fitted(self, "min_")
        return {"min": self.min_.tolist(), "max": self.max_.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "MinMaxNormalizer":
        norm = cls()
        norm.min_ = np.asarray(d["min"], dtype=float)
        norm.max_ = np.asarray(d["max"], dtype=float)
        return norm
