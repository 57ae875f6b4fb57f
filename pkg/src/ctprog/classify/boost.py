"""AdaBoost (SAMME) over shallow weighted-Gini trees."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .tree import DecisionTreeClassifier
from .util import check_predict_input, prepare_fit


class AdaBoostClassifier(BaseEstimator):
    """With n_estimators=1 the prediction equals the base tree's."""

    def __init__(
        self,
        n_estimators: int = 3,
        base_max_depth: int = 2,
        class_weight=None,
        seed: int = 0,
    ):
        self.n_estimators = n_estimators
        self.base_max_depth = base_max_depth
        self.class_weight = class_weight
        self.seed = seed
        self.classes_ = None
        self.estimators_ = None
        self.alphas_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        k = classes.size
        w = w / w.sum()
        self.estimators_, self.alphas_ = [], []
        for m in range(self.n_estimators):
            tree = DecisionTreeClassifier(max_depth=self.base_max_depth, seed=self.seed)
            tree.fit(X, classes[y_enc], sample_weight=w)
            pred = tree.predict(X)
            miss = pred != classes[y_enc]
            err = float(np.clip(w[miss].sum() / w.sum(), 1e-12, 1.0 - 1e-12))
            alpha = np.log((1.0 - err) / err) + np.log(k - 1.0)
            if alpha <= 0.0 and m > 0:
                break  # no better than chance, stop boosting
            alpha = max(alpha, 1e-9)
            self.estimators_.append(tree)
            self.alphas_.append(float(alpha))
            if err <= 1e-12:
                break  # perfect base learner
            w = w * np.exp(alpha * miss)
            w = w / w.sum()
        return self

    def predict(self, X):
        check_is_fitted(self, "estimators_")
        X = check_predict_input(X, self.n_features_in_)
        index = {c: i for i, c in enumerate(self.classes_)}
        scores = np.zeros((X.shape[0], self.classes_.size))
        for alpha, tree in zip(self.alphas_, self.estimators_):
            pred = tree.predict(X)
            cols = [index[c] for c in pred]
            scores[np.arange(X.shape[0]), cols] += alpha
        return self.classes_[np.argmax(scores, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "estimators_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "alphas": list(self.alphas_),
            "trees": [t.to_state() for t in self.estimators_],
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.alphas_ = [float(a) for a in state["alphas"]]
        self.estimators_ = [
            DecisionTreeClassifier().from_state(s) for s in state["trees"]
        ]
        return self
