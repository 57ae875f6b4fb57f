"""Quadratic discriminant analysis with diagonal covariance regularization."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit


class QDAClassifier(BaseEstimator):
    def __init__(self, reg: float = 1e-6, class_weight=None):
        self.reg = reg
        self.class_weight = class_weight
        self.classes_ = None
        self.means_ = None
        self.chols_ = None
        self.log_dets_ = None
        self.log_prior_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        p = X.shape[1]
        means, chols, log_dets, wk = [], [], [], []
        for c in range(classes.size):
            sel = y_enc == c
            wc = w[sel]
            total = wc.sum()
            mu = np.average(X[sel], axis=0, weights=wc)
            centered = X[sel] - mu
            cov = (centered * wc[:, None]).T @ centered / total
            cov += self.reg * np.eye(p)
            chol = np.linalg.cholesky(cov)
            means.append(mu)
            chols.append(chol)
            log_dets.append(2.0 * np.log(np.diag(chol)).sum())
            wk.append(total)
        self.means_ = np.asarray(means)
        self.chols_ = chols
        self.log_dets_ = np.asarray(log_dets)
        wk = np.asarray(wk)
        self.log_prior_ = np.log(wk / wk.sum())
        return self

    def predict(self, X):
        check_is_fitted(self, "means_")
        X = check_predict_input(X, self.n_features_in_)
        scores = np.empty((X.shape[0], self.classes_.size))
        for c in range(self.classes_.size):
            diff = (X - self.means_[c]).T
            solved = np.linalg.solve(self.chols_[c], diff)
            maha = (solved**2).sum(axis=0)
            scores[:, c] = self.log_prior_[c] - 0.5 * (self.log_dets_[c] + maha)
        return self.classes_[np.argmax(scores, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "means_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "means": self.means_.tolist(),
            "chols": [c.tolist() for c in self.chols_],
            "log_dets": self.log_dets_.tolist(),
            "log_prior": self.log_prior_.tolist(),
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.means_ = np.asarray(state["means"], dtype=float)
        self.chols_ = [np.asarray(c, dtype=float) for c in state["chols"]]
        self.log_dets_ = np.asarray(state["log_dets"], dtype=float)
        self.log_prior_ = np.asarray(state["log_prior"], dtype=float)
        return self
