"""k-nearest neighbors with weight-aware voting."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit, weighted_mode


class KNeighborsClassifier(BaseEstimator):
    def __init__(self, n_neighbors: int = 5, class_weight=None):
        self.n_neighbors = n_neighbors
        self.class_weight = class_weight
        self.classes_ = None
        self.X_ = None
        self.y_ = None
        self.w_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self.X_ = X
        self.y_ = y_enc
        self.w_ = w
        return self

    def predict(self, X):
        check_is_fitted(self, "X_")
        X = check_predict_input(X, self.n_features_in_)
        k = min(self.n_neighbors, self.X_.shape[0])
        d2 = (
            (X**2).sum(axis=1)[:, None]
            + (self.X_**2).sum(axis=1)[None, :]
            - 2.0 * X @ self.X_.T
        )
        # stable argsort: equal distances resolve to the lowest train index
        nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
        out = np.empty(X.shape[0], dtype=int)
        for i in range(X.shape[0]):
            idx = nearest[i]
            out[i] = weighted_mode(self.y_[idx], self.w_[idx], self.classes_.size)
        return self.classes_[out]

    def to_state(self) -> dict:
        check_is_fitted(self, "X_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "X": self.X_.tolist(),
            "y": self.y_.tolist(),
            "w": self.w_.tolist(),
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.X_ = np.asarray(state["X"], dtype=float).reshape(-1, self.n_features_in_)
        self.y_ = np.asarray(state["y"], dtype=int)
        self.w_ = np.asarray(state["w"], dtype=float)
        return self
