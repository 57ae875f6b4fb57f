"""Shared helpers for the classifier implementations."""

from __future__ import annotations

import numpy as np

from ..base import check_sample_weight, check_X_y
from ..errors import InvalidArgumentError


def encode_labels(y) -> tuple[np.ndarray, np.ndarray]:
    """(classes sorted ascending, y as indices into classes)."""
    classes, y_enc = np.unique(y, return_inverse=True)
    if classes.size < 2:
        raise InvalidArgumentError("training data must contain at least 2 classes")
    return classes, y_enc


def inverse_frequency_weights(y_enc: np.ndarray, n_classes: int) -> np.ndarray:
    """Per-sample weight n / (K * n_k) for a sample of class k."""
    counts = np.bincount(y_enc, minlength=n_classes)
    return (len(y_enc) / (n_classes * counts))[y_enc]


def prepare_fit(X, y, sample_weight, class_weight):
    """Validate inputs, encode labels, and fold class weighting into the
    per-sample weights."""
    X, y = check_X_y(X, y)
    classes, y_enc = encode_labels(y)
    w = check_sample_weight(sample_weight, X.shape[0])
    if class_weight == "balanced":
        w = w * inverse_frequency_weights(y_enc, classes.size)
    elif class_weight is not None:
        raise InvalidArgumentError("class_weight must be None or 'balanced'")
    return X, y_enc, classes, w


def check_predict_input(X, n_features: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != n_features:
        raise InvalidArgumentError(
            f"predict expects {n_features} features, got shape {X.shape}"
        )
    if not np.all(np.isfinite(X)):
        raise InvalidArgumentError("predict input contains non-finite values")
    return X


def weighted_mode(votes: np.ndarray, weights: np.ndarray, n_classes: int) -> int:
    """Index of the heaviest class; ties resolve to the lowest index."""
    tally = np.bincount(votes, weights=weights, minlength=n_classes)
    return int(np.argmax(tally))
