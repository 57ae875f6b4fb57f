"""Random forest of weighted-Gini trees with seeded bagging."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .tree import DecisionTreeClassifier
from .util import check_predict_input, prepare_fit, weighted_mode


class RandomForestClassifier(BaseEstimator):
    """With n_estimators=1, bootstrap=False and max_features=None this
    reproduces a single DecisionTreeClassifier exactly."""

    def __init__(
        self,
        n_estimators: int = 8,
        max_depth: int = 3,
        max_features="sqrt",
        bootstrap: bool = True,
        class_weight=None,
        seed: int = 0,
    ):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.class_weight = class_weight
        self.seed = seed
        self.classes_ = None
        self.estimators_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        rng = np.random.default_rng(self.seed)
        n = X.shape[0]
        self.estimators_ = []
        for _ in range(self.n_estimators):
            tree_seed = int(rng.integers(0, 2**31 - 1))
            idx = rng.integers(0, n, size=n) if self.bootstrap else np.arange(n)
            tree = DecisionTreeClassifier(
                max_depth=self.max_depth,
                max_features=self.max_features,
                seed=tree_seed,
            )
            drawn = np.unique(y_enc[idx])
            if drawn.size < 2:
                # degenerate bootstrap draw: constant tree
                tree.classes_ = classes[drawn]
                tree.n_features_in_ = X.shape[1]
                tree.tree_ = {"leaf": 0}
            else:
                tree.fit(X[idx], classes[y_enc[idx]], sample_weight=w[idx])
            self.estimators_.append(tree)
        return self

    def predict(self, X):
        check_is_fitted(self, "estimators_")
        X = check_predict_input(X, self.n_features_in_)
        index = {c: i for i, c in enumerate(self.classes_)}
        votes = np.zeros((len(self.estimators_), X.shape[0]), dtype=int)
        for t, tree in enumerate(self.estimators_):
            votes[t] = [index[c] for c in tree.predict(X)]
        ones = np.ones(len(self.estimators_))
        out = [
            weighted_mode(votes[:, i], ones, len(self.classes_))
            for i in range(X.shape[0])
        ]
        return self.classes_[out]

    def to_state(self) -> dict:
        check_is_fitted(self, "estimators_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "trees": [t.to_state() for t in self.estimators_],
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.estimators_ = [
            DecisionTreeClassifier().from_state(s) for s in state["trees"]
        ]
        return self
