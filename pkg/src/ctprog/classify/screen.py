"""Cross-partition screening of candidate classifiers.

Each method is fit and evaluated on every train/validation split; a
method is retained when its mean validation balanced accuracy exceeds
the floor and its train-validation balanced-accuracy drop stays under
the gap threshold (absolute difference).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..base import clone
from ..selection import PartitionScheme
from .metrics import classification_metrics
from .specs import ClassifierSpec, build_classifier

METRIC_KEYS = (
    "balanced_accuracy",
    "weighted_precision",
    "weighted_sensitivity",
    "weighted_specificity",
)


@dataclass(frozen=True)
class ScreenRow:
    name: str
    train_mean: dict
    train_sd: dict
    val_mean: dict
    val_sd: dict
    retained: bool


def _aggregate(reports) -> tuple[dict, dict]:
    mean, sd = {}, {}
    for key in METRIC_KEYS:
        values = np.asarray([r.as_dict()[key] for r in reports])
        mean[key] = float(values.mean())
        sd[key] = float(values.std(ddof=1)) if values.size > 1 else 0.0
    return mean, sd


def method_screen(
    models,
    partitions: PartitionScheme,
    X,
    y,
    ba_threshold: float = 0.60,
    gap_threshold: float = 0.20,
    seed: int = 0,
) -> tuple[list[str], list[ScreenRow]]:
    """Returns (retained names, report rows in input order).

    ``models`` is a sequence of ClassifierSpec or (name, estimator)
    prototypes; prototypes are cloned per split.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    rows: list[ScreenRow] = []
    retained: list[str] = []
    for item in models:
        if isinstance(item, ClassifierSpec):
            name, prototype = item.name, build_classifier(item, seed=seed)
        else:
            name, prototype = item
        train_reports, val_reports = [], []
        for train_idx, val_idx in partitions.splits:
            est = clone(prototype)
            est.fit(X[train_idx], y[train_idx])
            train_reports.append(
                classification_metrics(y[train_idx], est.predict(X[train_idx]))
            )
            val_reports.append(
                classification_metrics(y[val_idx], est.predict(X[val_idx]))
            )
        train_mean, train_sd = _aggregate(train_reports)
        val_mean, val_sd = _aggregate(val_reports)
        keep = val_mean["balanced_accuracy"] > ba_threshold and (
            train_mean["balanced_accuracy"] - val_mean["balanced_accuracy"]
        ) < gap_threshold
        rows.append(ScreenRow(name, train_mean, train_sd, val_mean, val_sd, keep))
        if keep:
            retained.append(name)
    return retained, rows


def screen_report_csv_rows(rows) -> list[list[str]]:
    """Table rows: classifier, metric, train mean/sd, validation mean/sd."""
    out = [["classifier", "metric", "train_mean", "train_sd", "val_mean", "val_sd"]]
    for row in rows:
        for key in METRIC_KEYS:
            out.append(
                [
                    row.name,
                    key,
                    repr(row.train_mean[key]),
                    repr(row.train_sd[key]),
                    repr(row.val_mean[key]),
                    repr(row.val_sd[key]),
                ]
            )
    return out
