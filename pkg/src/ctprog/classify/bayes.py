"""Gaussian and Bernoulli naive Bayes with weighted sufficient statistics."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit


class GaussianNBClassifier(BaseEstimator):
    def __init__(self, var_smoothing: float = 1e-9, class_weight=None):
        self.var_smoothing = var_smoothing
        self.class_weight = class_weight
        self.classes_ = None
        self.theta_ = None
        self.var_ = None
        self.log_prior_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        k = classes.size
        theta = np.zeros((k, X.shape[1]))
        var = np.zeros((k, X.shape[1]))
        wk = np.zeros(k)
        for c in range(k):
            sel = y_enc == c
            wc = w[sel]
            wk[c] = wc.sum()
            theta[c] = np.average(X[sel], axis=0, weights=wc)
            var[c] = np.average((X[sel] - theta[c]) ** 2, axis=0, weights=wc)
        var += self.var_smoothing * max(float(X.var(axis=0).max()), 1e-12)
        self.theta_ = theta
        self.var_ = var
        self.log_prior_ = np.log(wk / wk.sum())
        return self

    def _joint_log_likelihood(self, X):
        jll = np.empty((X.shape[0], self.classes_.size))
        for c in range(self.classes_.size):
            log_det = np.sum(np.log(2.0 * np.pi * self.var_[c]))
            maha = ((X - self.theta_[c]) ** 2 / self.var_[c]).sum(axis=1)
            jll[:, c] = self.log_prior_[c] - 0.5 * (log_det + maha)
        return jll

    def predict(self, X):
        check_is_fitted(self, "theta_")
        X = check_predict_input(X, self.n_features_in_)
        return self.classes_[np.argmax(self._joint_log_likelihood(X), axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "theta_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "theta": self.theta_.tolist(),
            "var": self.var_.tolist(),
            "log_prior": self.log_prior_.tolist(),
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.theta_ = np.asarray(state["theta"], dtype=float)
        self.var_ = np.asarray(state["var"], dtype=float)
        self.log_prior_ = np.asarray(state["log_prior"], dtype=float)
        return self


class BernoulliNBClassifier(BaseEstimator):
    def __init__(self, binarize: float = 0.5, alpha: float = 1.0, class_weight=None):
        self.binarize = binarize
        self.alpha = alpha
        self.class_weight = class_weight
        self.classes_ = None
        self.feature_log_prob_ = None
        self.feature_log_neg_prob_ = None
        self.log_prior_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        Xb = (X > self.binarize).astype(float)
        k = classes.size
        prob = np.zeros((k, X.shape[1]))
        wk = np.zeros(k)
        for c in range(k):
            sel = y_enc == c
            wc = w[sel]
            wk[c] = wc.sum()
            prob[c] = (Xb[sel] * wc[:, None]).sum(axis=0)
        prob = (prob + self.alpha) / (wk[:, None] + 2.0 * self.alpha)
        self.feature_log_prob_ = np.log(prob)
        self.feature_log_neg_prob_ = np.log1p(-prob)
        self.log_prior_ = np.log(wk / wk.sum())
        return self

    def predict(self, X):
        check_is_fitted(self, "feature_log_prob_")
        X = check_predict_input(X, self.n_features_in_)
        Xb = (X > self.binarize).astype(float)
        jll = (
            Xb @ self.feature_log_prob_.T
            + (1.0 - Xb) @ self.feature_log_neg_prob_.T
            + self.log_prior_
        )
        return self.classes_[np.argmax(jll, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "feature_log_prob_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "feature_log_prob": self.feature_log_prob_.tolist(),
            "feature_log_neg_prob": self.feature_log_neg_prob_.tolist(),
            "log_prior": self.log_prior_.tolist(),
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.feature_log_prob_ = np.asarray(state["feature_log_prob"], dtype=float)
        self.feature_log_neg_prob_ = np.asarray(
            state["feature_log_neg_prob"], dtype=float
        )
        self.log_prior_ = np.asarray(state["log_prior"], dtype=float)
        return self
