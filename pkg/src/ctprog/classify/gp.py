"""Gaussian process classification via the regression-on-labels posterior
mean (least-squares classification), adequate for cohorts of a few
hundred samples."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit


def _rbf(A, B, length_scale):
    sq = (
        (A**2).sum(axis=1)[:, None]
        + (B**2).sum(axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-np.maximum(sq, 0.0) / (2.0 * length_scale**2))


class GaussianProcessClassifier(BaseEstimator):
    """RBF-kernel GP regression on +/-1 targets; predicts the sign of the
    posterior mean (one-vs-rest for more than two classes).  Sample
    weights enter as per-sample noise 1/w."""

    def __init__(self, length_scale: float = 1.0, noise: float = 1e-6, class_weight=None):
        self.length_scale = length_scale
        self.noise = noise
        self.class_weight = class_weight
        self.classes_ = None
        self.X_ = None
        self.dual_coefs_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self.X_ = X
        K = _rbf(X, X, self.length_scale)
        inv_w = np.where(w > 0, 1.0 / np.maximum(w, 1e-12), 1e12)
        K_noisy = K + np.diag(self.noise * inv_w) + 1e-10 * np.eye(X.shape[0])
        chol = np.linalg.cholesky(K_noisy)

        targets = []
        if classes.size == 2:
            targets.append(np.where(y_enc == 1, 1.0, -1.0))
        else:
            targets.extend(
                np.where(y_enc == k, 1.0, -1.0) for k in range(classes.size)
            )
        self.dual_coefs_ = [
            np.linalg.solve(chol.T, np.linalg.solve(chol, t)) for t in targets
        ]
        return self

    def decision_function(self, X):
        check_is_fitted(self, "dual_coefs_")
        X = check_predict_input(X, self.n_features_in_)
        kx = _rbf(X, self.X_, self.length_scale)
        scores = [kx @ coef for coef in self.dual_coefs_]
        if len(scores) == 1:
            return scores[0]
        return np.stack(scores, axis=1)

    def predict(self, X):
        scores = self.decision_function(X)
        if scores.ndim == 1:
            return self.classes_[(scores >= 0).astype(int)]
        return self.classes_[np.argmax(scores, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "dual_coefs_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "X": self.X_.tolist(),
            "dual_coefs": [c.tolist() for c in self.dual_coefs_],
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.X_ = np.asarray(state["X"], dtype=float).reshape(-1, self.n_features_in_)
        self.dual_coefs_ = [np.asarray(c, dtype=float) for c in state["dual_coefs"]]
        return self
