"""Classification metrics: balanced accuracy and the support-weighted
precision/sensitivity/specificity family."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class MetricsReport:
    balanced_accuracy: float
    weighted_precision: float
    weighted_sensitivity: float
    weighted_specificity: float
    confusion: np.ndarray
    classes: tuple
    zero_division: bool = False  # some per-class term had an empty denominator

    def as_dict(self) -> dict:
        return {
            "balanced_accuracy": self.balanced_accuracy,
            "weighted_precision": self.weighted_precision,
            "weighted_sensitivity": self.weighted_sensitivity,
            "weighted_specificity": self.weighted_specificity,
        }


def confusion_matrix(y_true, y_pred, classes) -> np.ndarray:
    """Rows = true classes, columns = predicted classes."""
    index = {c: i for i, c in enumerate(classes)}
    m = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        m[index[t], index[p]] += 1
    return m


def classification_metrics(y_true, y_pred, classes=None) -> MetricsReport:
    """Metrics over the union of observed labels (or an explicit class list).

    Balanced accuracy averages recall over classes present in y_true.
    Weighted metrics weight per-class terms by support share.  Per-class
    terms with an empty denominator contribute 0 and set the
    zero_division flag.
    """
    y_true = np.asarray(y_true).ravel()
    y_pred = np.asarray(y_pred).ravel()
    if y_true.shape != y_pred.shape:
        raise InvalidArgumentError("y_true and y_pred must have equal length")
    if y_true.size == 0:
        raise InvalidArgumentError("metrics need at least one sample")
    if classes is None:
        classes = sorted(set(y_true.tolist()) | set(y_pred.tolist()))
    else:
        classes = list(classes)
        observed = set(y_true.tolist()) | set(y_pred.tolist())
        if not observed.issubset(classes):
            raise InvalidArgumentError(
                f"labels {sorted(observed - set(classes))} outside declared classes"
            )

    conf = confusion_matrix(y_true, y_pred, classes)
    n = conf.sum()
    support = conf.sum(axis=1)
    predicted = conf.sum(axis=0)
    tp = np.diag(conf).astype(float)

    zero_division = False
    recalls, precisions, specificities = [], [], []
    for k in range(len(classes)):
        if support[k] > 0:
            recalls.append(tp[k] / support[k])
        else:
            recalls.append(0.0)
            zero_division = True
        if predicted[k] > 0:
            precisions.append(tp[k] / predicted[k])
        else:
            precisions.append(0.0)
            zero_division = True
        neg = n - support[k]
        if neg > 0:
            # recall over not-k: true negatives / all truly not-k
            tn = n - support[k] - predicted[k] + tp[k]
            specificities.append(tn / neg)
        else:
            specificities.append(0.0)
            zero_division = True

    present = support > 0
    balanced = float(np.mean(np.asarray(recalls)[present])) if present.any() else 0.0
    shares = support / n
    return MetricsReport(
        balanced_accuracy=balanced,
        weighted_precision=float(np.dot(shares, precisions)),
        weighted_sensitivity=float(np.dot(shares, recalls)),
        weighted_specificity=float(np.dot(shares, specificities)),
        confusion=conf,
        classes=tuple(classes),
        zero_division=zero_division,
    )
