"""Hierarchical two-stage outcome prediction by classifier consensus.

Stage 1 separates severe from non-severe; stage 2, trained on severe
rows only, separates deceased from intubated.  At inference the stage-2
vote is applied only to rows voted severe (rows voted non-severe never
carry a stage-2 label).  A one-vs-rest three-class vote is provided as
the alternative aggregation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .base import BaseEstimator, check_is_fitted, check_X_y
from .classify.metrics import MetricsReport, classification_metrics
from .classify.specs import (
    RETAINED_SEVEN,
    build_classifier,
    model_from_state,
    model_to_state,
    spec_by_name,
)
from .errors import InvalidArgumentError, SchemaError
from .features.normalize import MinMaxNormalizer
from .table import FeatureTable


class Outcome(IntEnum):
    NON_SEVERE = 0
    INTUBATED = 1
    DECEASED = 2


def vote(labels) -> int:
    """Modal label; exact ties resolve to the most severe label.

    Covers the documented tie rules: severe side at stage 1, deceased at
    stage 2, severity order for three-class voting.
    """
    labels = np.asarray(labels)
    if labels.size == 0:
        raise InvalidArgumentError("vote needs at least one label")
    values, counts = np.unique(labels, return_counts=True)
    tied = values[counts == counts.max()]
    return int(tied.max())


def _vote_rows(predictions: np.ndarray) -> np.ndarray:
    """predictions: (n_models, n_rows) -> per-row vote."""
    return np.asarray([vote(predictions[:, i]) for i in range(predictions.shape[1])])


class HierarchicalOutcomeModel(BaseEstimator):
    """Majority-vote ensemble over the retained classifier set.

    mode='hierarchical' gates stage 2 on the stage-1 vote;
    mode='ovr' aggregates three one-vs-rest voting blocks.
    """

    def __init__(self, spec_names=RETAINED_SEVEN, mode: str = "hierarchical",
                 seed: int = 0):
        self.spec_names = tuple(spec_names)
        self.mode = mode
        self.seed = seed
        self.stage1_ = None
        self.stage2_ = None
        self.ovr_ = None
        self.n_features_in_ = None

    def _fit_block(self, X, y):
        models = []
        for name in self.spec_names:
            est = build_classifier(spec_by_name(name), seed=self.seed)
            est.fit(X, y)
            models.append(est)
        return models

    def fit(self, X, y):
        if self.mode not in ("hierarchical", "ovr"):
            raise InvalidArgumentError(f"unknown mode {self.mode!r}")
        X, y = check_X_y(X, y)
        y = y.astype(int)
        present = set(np.unique(y).tolist())
        if present != {0, 1, 2}:
            raise InvalidArgumentError(
                f"training outcomes must cover all three classes, got {sorted(present)}"
            )
        self.n_features_in_ = X.shape[1]
        severe = (y > 0).astype(int)
        self.stage1_ = self._fit_block(X, severe)
        sel = y > 0
        self.stage2_ = self._fit_block(X[sel], y[sel])
        self.ovr_ = [
            self._fit_block(X, (y == k).astype(int)) for k in (0, 1, 2)
        ]
        return self

    def _block_predictions(self, models, X) -> np.ndarray:
        return np.stack([m.predict(X) for m in models])

    def predict_stages(self, X):
        """(stage1 votes in {0,1}, unconditional stage2 votes in {1,2},
        gated final outcome)."""
        check_is_fitted(self, "stage1_")
        X = np.asarray(X, dtype=float)
        stage1 = _vote_rows(self._block_predictions(self.stage1_, X))
        stage2 = _vote_rows(self._block_predictions(self.stage2_, X))
        final = np.where(stage1 == 0, Outcome.NON_SEVERE.value, stage2)
        return stage1, stage2, final

    def predict_ovr(self, X) -> np.ndarray:
        """Per class, count of positive one-vs-rest votes; argmax label
        with ties resolved by severity (deceased > intubated > non-severe)."""
        check_is_fitted(self, "ovr_")
        X = np.asarray(X, dtype=float)
        counts = np.stack(
            [self._block_predictions(block, X).sum(axis=0) for block in self.ovr_],
            axis=1,
        )
        n = X.shape[0]
        out = np.empty(n, dtype=int)
        for i in range(n):
            best = counts[i].max()
            out[i] = int(np.flatnonzero(counts[i] == best).max())
        return out

    def predict(self, X) -> np.ndarray:
        if self.mode == "ovr":
            return self.predict_ovr(X)
        return self.predict_stages(X)[2]

    def to_state(self) -> dict:
        check_is_fitted(self, "stage1_")
        return {
            "spec_names": list(self.spec_names),
            "mode": self.mode,
            "seed": self.seed,
            "n_features": self.n_features_in_,
            "stage1": [model_to_state(m) for m in self.stage1_],
            "stage2": [model_to_state(m) for m in self.stage2_],
            "ovr": [[model_to_state(m) for m in block] for block in self.ovr_],
        }

    @classmethod
    def from_state(cls, state: dict) -> "HierarchicalOutcomeModel":
        model = cls(
            tuple(state["spec_names"]), state["mode"], int(state["seed"])
        )
        model.n_features_in_ = int(state["n_features"])
        model.stage1_ = [model_from_state(s) for s in state["stage1"]]
        model.stage2_ = [model_from_state(s) for s in state["stage2"]]
        model.ovr_ = [[model_from_state(s) for s in block] for block in state["ovr"]]
        return model


@dataclass
class TrainedEnsemble:
    """Persistable bundle: selected feature names, normalization
    parameters, and the fitted hierarchical ensemble."""

    selected_features: tuple
    normalizer: MinMaxNormalizer
    model: HierarchicalOutcomeModel
    seed: int

    def _matrix(self, table: FeatureTable) -> np.ndarray:
        try:
            X = table.select(self.selected_features)
        except SchemaError as exc:
            raise SchemaError(f"feature table does not match the model: {exc}") from None
        return self.normalizer.transform(X)

    def predict_table(self, table: FeatureTable):
        """dict with 'outcome', 'stage1', 'stage2', 'ovr' arrays per row."""
        X = self._matrix(table)
        stage1, stage2, final = self.model.predict_stages(X)
        ovr = self.model.predict_ovr(X)
        outcome = ovr if self.model.mode == "ovr" else final
        return {"outcome": outcome, "stage1": stage1, "stage2": stage2, "ovr": ovr}

    def to_json(self) -> str:
        return json.dumps(
            {
                "selected_features": list(self.selected_features),
                "normalizer": self.normalizer.to_dict(),
                "seed": self.seed,
                "model": self.model.to_state(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "TrainedEnsemble":
        d = json.loads(text)
        return cls(
            tuple(d["selected_features"]),
            MinMaxNormalizer.from_dict(d["normalizer"]),
            HierarchicalOutcomeModel.from_state(d["model"]),
            int(d["seed"]),
        )


def train_ensemble(
    table: FeatureTable,
    selected_features,
    spec_names=RETAINED_SEVEN,
    mode: str = "hierarchical",
    seed: int = 0,
) -> TrainedEnsemble:
    """Normalize the selected columns on this table and fit the ensemble."""
    selected = tuple(selected_features)
    X_raw = table.select(selected)
    y = table.labeled_outcomes()
    normalizer = MinMaxNormalizer().fit(X_raw)
    model = HierarchicalOutcomeModel(spec_names=tuple(spec_names), mode=mode, seed=seed)
    model.fit(normalizer.transform(X_raw), y)
    return TrainedEnsemble(selected, normalizer, model, seed)


def evaluate_three_class(y_true, y_pred) -> MetricsReport:
    """Three-class metrics over the fixed outcome labels {0, 1, 2}."""
    return classification_metrics(y_true, y_pred, classes=(0, 1, 2))
