"""Decision tree on weighted Gini impurity.

Splits minimize the weighted child impurity over every feature and every
midpoint threshold; exact ties resolve to the lowest feature index, then
the lowest threshold, so fits are bit-reproducible.
"""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit


def _split_score(x: np.ndarray, y_enc: np.ndarray, w: np.ndarray, n_classes: int):
    """Best (score, threshold) for one feature; None when x is constant.

    score = sum over children of W_child * Gini(child), to be minimized.
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    cuts = np.flatnonzero(xs[:-1] < xs[1:])
    if cuts.size == 0:
        return None
    onehot = np.zeros((x.size, n_classes))
    onehot[np.arange(x.size), y_enc[order]] = w[order]
    cum = np.cumsum(onehot, axis=0)
    total = cum[-1]
    left = cum[cuts]
    right = total - left
    left_tot = left.sum(axis=1)
    right_tot = right.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        score = np.where(left_tot > 0, left_tot - (left**2).sum(axis=1) / left_tot, 0.0)
        score += np.where(
            right_tot > 0, right_tot - (right**2).sum(axis=1) / right_tot, 0.0
        )
    best = int(np.argmin(score))  # first minimum = lowest threshold
    pos = cuts[best]
    thr = 0.5 * (xs[pos] + xs[pos + 1])
    return float(score[best]), float(thr)


class DecisionTreeClassifier(BaseEstimator):
    def __init__(
        self,
        max_depth: int = 3,
        min_samples_split: int = 2,
        max_features=None,
        class_weight=None,
        seed: int = 0,
    ):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.class_weight = class_weight
        self.seed = seed
        self.classes_ = None
        self.tree_ = None
        self.n_features_in_ = None

    def _n_split_features(self, p: int) -> int:
        if self.max_features is None:
            return p
        if self.max_features == "sqrt":
            return max(1, int(round(np.sqrt(p))))
        return max(1, min(int(self.max_features), p))

    def _build(self, X, y_enc, w, depth, rng, fallback: int):
        counts = np.bincount(y_enc, weights=w, minlength=len(self.classes_))
        majority = int(np.argmax(counts)) if counts.sum() > 0 else fallback
        pure = np.count_nonzero(counts) <= 1
        if depth >= self.max_depth or len(y_enc) < self.min_samples_split or pure:
            return {"leaf": majority}

        p = X.shape[1]
        k = self._n_split_features(p)
        if k < p:
            feature_pool = np.sort(rng.choice(p, size=k, replace=False))
        else:
            feature_pool = np.arange(p)

        best = None  # (score, feature, threshold)
        for j in feature_pool:
            found = _split_score(X[:, j], y_enc, w, len(self.classes_))
            if found is None:
                continue
            score, thr = found
            if best is None or score < best[0]:
                best = (score, int(j), thr)
        if best is None:
            return {"leaf": majority}

        _, feature, thr = best
        mask = X[:, feature] <= thr
        return {
            "feature": feature,
            "threshold": thr,
            "left": self._build(X[mask], y_enc[mask], w[mask], depth + 1, rng, majority),
            "right": self._build(
                X[~mask], y_enc[~mask], w[~mask], depth + 1, rng, majority
            ),
        }

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        rng = np.random.default_rng(self.seed)
        self.tree_ = self._build(X, y_enc, w, 0, rng, fallback=0)
        return self

    def _predict_node(self, node, X, idx, out):
        if "leaf" in node:
            out[idx] = node["leaf"]
            return
        mask = X[idx, node["feature"]] <= node["threshold"]
        if mask.any():
            self._predict_node(node["left"], X, idx[mask], out)
        if (~mask).any():
            self._predict_node(node["right"], X, idx[~mask], out)

    def predict(self, X):
        check_is_fitted(self, "tree_")
        X = check_predict_input(X, self.n_features_in_)
        out = np.zeros(X.shape[0], dtype=int)
        self._predict_node(self.tree_, X, np.arange(X.shape[0]), out)
        return self.classes_[out]

    def to_state(self) -> dict:
        check_is_fitted(self, "tree_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "tree": self.tree_,
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.tree_ = state["tree"]
        return self
