"""Repeated stratified partitioning, lasso regularization path, and
cross-partition consensus feature selection.

The lasso objective ||y - Xw||^2 / (2n) + alpha*||w||_1 is minimized by
cyclic coordinate descent with soft thresholding over a descending grid
of alphas (warm-started).  Columns of X and y are centered internally so
no intercept is carried.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

FORCED_FEATURES = ("age", "gender")


@dataclass(frozen=True)
class PartitionScheme:
    seed: int
    n_splits: int
    train_fraction: float
    splits: tuple  # tuple of (train_indices, val_indices) ndarray pairs


def stratified_partitions(
    labels, seed: int, n_splits: int = 10, train_fraction: float = 0.8
) -> PartitionScheme:
    """Seeded train/validation splits preserving per-class shares.

    Each class contributes round((1-train_fraction)*n_k) validation rows,
    which keeps every class's validation share within one row of the
    global share.
    """
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise InvalidArgumentError("labels must be 1-dimensional")
    if not 0.0 < train_fraction < 1.0:
        raise InvalidArgumentError("train_fraction must be in (0, 1)")
    classes, counts = np.unique(labels, return_counts=True)
    if counts.min() < 2:
        raise InvalidArgumentError("every class needs at least 2 samples")

    rng = np.random.default_rng(seed)
    val_fraction = 1.0 - train_fraction
    splits = []
    for _ in range(n_splits):
        train_idx, val_idx = [], []
        for cls in classes:
            members = np.flatnonzero(labels == cls)
            perm = rng.permutation(members)
            n_val = int(math.floor(val_fraction * len(members) + 0.5))
            val_idx.append(perm[:n_val])
            train_idx.append(perm[n_val:])
        train = np.sort(np.concatenate(train_idx))
        val = np.sort(np.concatenate(val_idx))
        splits.append((train, val))
    return PartitionScheme(int(seed), n_splits, train_fraction, tuple(splits))


@dataclass(frozen=True)
class LassoPath:
    alphas: np.ndarray          # strictly decreasing
    coefficients: np.ndarray    # (n_alphas, n_features)
    converged: np.ndarray       # bool per alpha
    n_samples: int
    x_mean: np.ndarray
    y_mean: float


def _soft_threshold(z: float, thresh: float) -> float:
    if z > thresh:
        return z - thresh
    if z < -thresh:
        return z + thresh
    return 0.0


def _kkt_residual(gradient: np.ndarray, w: np.ndarray, alpha: float) -> float:
    """Max violation of the lasso stationarity conditions."""
    active = w != 0.0
    res = 0.0
    if active.any():
        res = float(np.abs(gradient[active] - alpha * np.sign(w[active])).max())
    if (~active).any():
        res = max(res, float(np.maximum(np.abs(gradient[~active]) - alpha, 0.0).max()))
    return res


def lasso_path(
    X,
    y,
    n_alphas: int = 200,
    path_ratio: float = 0.01,
    max_sweeps: int = 1000,
    tol: float = 1e-6,
    kkt_tol: float = 1e-6,
) -> LassoPath:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.size:
        raise InvalidArgumentError("X must be (n, p) and y length n")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise InvalidArgumentError("lasso inputs must be finite")
    n, p = X.shape
    if n < 2:
        raise InvalidArgumentError("lasso needs at least 2 samples")

    x_mean = X.mean(axis=0)
    Xc = X - x_mean
    y_mean = float(y.mean())
    yc = y - y_mean

    gram = Xc.T @ Xc / n
    corr = Xc.T @ yc / n
    diag = np.diag(gram).copy()

    alpha_max = float(np.abs(corr).max()) if p else 0.0
    if alpha_max <= 0.0:
        alpha_max = 1e-12  # fully degenerate target: the path is all-zero
    alphas = np.logspace(
        math.log10(alpha_max), math.log10(alpha_max * path_ratio), n_alphas
    )
    alphas[0] = alpha_max  # exact, so w = 0 holds exactly at the top of the path

    coefs = np.zeros((n_alphas, p))
    converged = np.zeros(n_alphas, dtype=bool)
    w = np.zeros(p)

    def objective(w_, alpha_):
        # ||y - Xw||^2/(2n) + alpha*|w|_1 up to the constant ||yc||^2/(2n)
        return (
            0.5 * float(w_ @ gram @ w_)
            - float(corr @ w_)
            + alpha_ * float(np.abs(w_).sum())
        )

    for a_idx, alpha in enumerate(alphas):
        prev_obj = objective(w, alpha)
        active = np.flatnonzero(w)
        for sweep in range(max_sweeps):
            # alternate cheap active-set sweeps with full sweeps
            full = sweep % 5 == 0 or active.size == 0
            coords = range(p) if full else active
            max_delta = 0.0
            for j in coords:
                if diag[j] <= 0.0:
                    continue
                grad_j = corr[j] - float(gram[j] @ w) + diag[j] * w[j]
                w_new = _soft_threshold(grad_j, alpha) / diag[j]
                delta = w_new - w[j]
                if delta != 0.0:
                    w[j] = w_new
                    max_delta = max(max_delta, abs(delta))
            obj = objective(w, alpha)
            if obj > prev_obj + 1e-12 * max(1.0, abs(prev_obj)):
                raise AssertionError(
                    f"lasso objective increased within a sweep: {prev_obj} -> {obj}"
                )
            prev_obj = obj
            active = np.flatnonzero(w)
            if max_delta < tol and full:
                if _kkt_residual(corr - gram @ w, w, alpha) < kkt_tol:
                    converged[a_idx] = True
                    break
        coefs[a_idx] = w
    return LassoPath(alphas, coefs, converged, n, x_mean, y_mean)


def lasso_select(
    X_train,
    y_train,
    X_val,
    y_val,
    feature_names=None,
    coef_tol: float = 1e-10,
    **path_kwargs,
):
    """Support of the path alpha with minimal validation MSE.

    Returns feature names when given, otherwise column indices.  Ties in
    validation MSE resolve to the larger (sparser) alpha.
    """
    path = lasso_path(X_train, y_train, **path_kwargs)
    X_val = np.asarray(X_val, dtype=float)
    y_val = np.asarray(y_val, dtype=float)
    preds = (X_val - path.x_mean) @ path.coefficients.T + path.y_mean
    mse = ((preds - y_val[:, None]) ** 2).mean(axis=0)
    best = int(np.argmin(mse))  # argmin takes the first (largest alpha) on ties
    support = np.flatnonzero(np.abs(path.coefficients[best]) > coef_tol)
    if feature_names is not None:
        return {feature_names[j] for j in support}
    return set(int(j) for j in support)


@dataclass(frozen=True)
class SelectionReport:
    prevalence: dict  # feature name -> number of splits that selected it
    n_splits: int
    cutoff_fraction: float
    selected: tuple   # final names, forced-in included, sorted
    forced: tuple = FORCED_FEATURES
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "prevalence": dict(sorted(self.prevalence.items())),
                "n_splits": self.n_splits,
                "cutoff_fraction": self.cutoff_fraction,
                "selected": list(self.selected),
                "forced": list(self.forced),
                "seed": self.seed,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SelectionReport":
        d = json.loads(text)
        return cls(
            dict(d["prevalence"]),
            int(d["n_splits"]),
            float(d["cutoff_fraction"]),
            tuple(d["selected"]),
            tuple(d["forced"]),
            d.get("seed"),
        )


def consensus_select(
    selections,
    cutoff_fraction: float = 0.25,
    forced=FORCED_FEATURES,
    seed: int | None = None,
) -> SelectionReport:
    """Retain features picked in at least ceil(cutoff * n_splits) splits;
    the forced names (age, gender) are always appended."""
    n_splits = len(selections)
    if n_splits == 0:
        raise InvalidArgumentError("consensus needs at least one selection set")
    prevalence: dict[str, int] = {}
    for sel in selections:
        for name in sel:
            prevalence[name] = prevalence.get(name, 0) + 1
    threshold = math.ceil(cutoff_fraction * n_splits - 1e-12)
    selected = {name for name, count in prevalence.items() if count >= threshold}
    selected.update(forced)
    for name in forced:
        prevalence.setdefault(name, 0)
    return SelectionReport(
        prevalence, n_splits, cutoff_fraction, tuple(sorted(selected)), tuple(forced), seed
    )
