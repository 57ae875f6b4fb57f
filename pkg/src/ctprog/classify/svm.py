"""Support vector machines solved in the dual by SMO.

Pair selection follows the maximal-violating-pair rule; per-sample box
constraints C_i = C * w_i carry the sample weights.  The bias is the KKT
average over free support vectors.  Multiclass input is handled
one-vs-rest with argmax over decision values.
"""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from ..errors import InvalidArgumentError
from .util import check_predict_input, prepare_fit

KERNELS = ("linear", "poly", "rbf", "sigmoid")


def _kernel_matrix(kernel, A, B, gamma, degree, coef0):
    if kernel == "linear":
        return A @ B.T
    if kernel == "poly":
        return (gamma * (A @ B.T) + coef0) ** degree
    if kernel == "rbf":
        sq = (
            (A**2).sum(axis=1)[:, None]
            + (B**2).sum(axis=1)[None, :]
            - 2.0 * (A @ B.T)
        )
        return np.exp(-gamma * np.maximum(sq, 0.0))
    if kernel == "sigmoid":
        return np.tanh(gamma * (A @ B.T) + coef0)
    raise InvalidArgumentError(f"unknown kernel {kernel!r}")


def _smo(K, ypm, c_box, tol, max_iter):
    """Minimize 1/2 a'Qa - 1'a s.t. 0 <= a <= c_box, y'a = 0.

    Returns (alpha, bias).
    """
    n = ypm.size
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of the dual objective: Q a - 1
    neg_inf = -np.inf

    for _ in range(max_iter):
        neg_yg = -ypm * grad
        up = ((ypm > 0) & (alpha < c_box)) | ((ypm < 0) & (alpha > 0))
        dn = ((ypm > 0) & (alpha > 0)) | ((ypm < 0) & (alpha < c_box))
        if not up.any() or not dn.any():
            break
        up_vals = np.where(up, neg_yg, neg_inf)
        dn_vals = np.where(dn, neg_yg, np.inf)
        i = int(np.argmax(up_vals))
        j = int(np.argmin(dn_vals))
        if up_vals[i] - dn_vals[j] < tol:
            break

        yi, yj = ypm[i], ypm[j]
        s = yi * yj
        # errors without bias: E = y * grad
        ei, ej = yi * grad[i], yj * grad[j]
        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta <= 0.0:
            eta = 1e-12
        aj_old, ai_old = alpha[j], alpha[i]
        if s > 0:
            low = max(0.0, ai_old + aj_old - c_box[i])
            high = min(c_box[j], ai_old + aj_old)
        else:
            low = max(0.0, aj_old - ai_old)
            high = min(c_box[j], c_box[i] + aj_old - ai_old)
        aj = np.clip(aj_old + yj * (ei - ej) / eta, low, high)
        if abs(aj - aj_old) < 1e-15:
            break  # numerically stalled at the working pair
        ai = ai_old + s * (aj_old - aj)
        alpha[i], alpha[j] = ai, aj
        grad += ypm * (yi * K[:, i]) * (ai - ai_old)
        grad += ypm * (yj * K[:, j]) * (aj - aj_old)

    free = (alpha > 1e-9) & (alpha < c_box - 1e-9)
    if free.any():
        bias = float(np.mean((-ypm * grad)[free]))
    else:
        neg_yg = -ypm * grad
        up = ((ypm > 0) & (alpha < c_box)) | ((ypm < 0) & (alpha > 0))
        dn = ((ypm > 0) & (alpha > 0)) | ((ypm < 0) & (alpha < c_box))
        hi = neg_yg[up].max() if up.any() else 0.0
        lo = neg_yg[dn].min() if dn.any() else 0.0
        bias = float(0.5 * (hi + lo))
    return alpha, bias


class SVMClassifier(BaseEstimator):
    def __init__(
        self,
        kernel: str = "rbf",
        C: float = 0.25,
        gamma="auto",
        degree: int = 3,
        coef0: float = 0.0,
        tol: float = 1e-5,
        max_iter: int = 10_000,
        class_weight=None,
    ):
        self.kernel = kernel
        self.C = C
        self.gamma = gamma
        self.degree = degree
        self.coef0 = coef0
        self.tol = tol
        self.max_iter = max_iter
        self.class_weight = class_weight
        self.classes_ = None
        self.machines_ = None
        self.gamma_ = None
        self.n_features_in_ = None

    def _resolve_gamma(self, p: int) -> float:
        if self.gamma == "auto":
            return 1.0 / p
        return float(self.gamma)

    def _fit_binary(self, X, ypm, w, K):
        c_box = self.C * w
        alpha, bias = _smo(K, ypm, c_box, self.tol, self.max_iter)
        sv = alpha > 1e-12
        return {
            "support_vectors": X[sv],
            "dual_coef": (alpha * ypm)[sv],
            "bias": bias,
        }

    def fit(self, X, y, sample_weight=None):
        if self.kernel not in KERNELS:
            raise InvalidArgumentError(f"unknown kernel {self.kernel!r}")
        if self.C <= 0:
            raise InvalidArgumentError("C must be positive")
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self.gamma_ = self._resolve_gamma(X.shape[1])
        K = _kernel_matrix(self.kernel, X, X, self.gamma_, self.degree, self.coef0)
        if classes.size == 2:
            ypm = np.where(y_enc == 1, 1.0, -1.0)
            self.machines_ = [self._fit_binary(X, ypm, w, K)]
        else:
            self.machines_ = [
                self._fit_binary(X, np.where(y_enc == k, 1.0, -1.0), w, K)
                for k in range(classes.size)
            ]
        return self

    def decision_function(self, X) -> np.ndarray:
        """(n,) signed distance for binary problems, (n, K) one-vs-rest scores."""
        check_is_fitted(self, "machines_")
        X = check_predict_input(X, self.n_features_in_)
        scores = []
        for m in self.machines_:
            kx = _kernel_matrix(
                self.kernel, m["support_vectors"], X, self.gamma_, self.degree, self.coef0
            )
            scores.append(m["dual_coef"] @ kx + m["bias"])
        if len(scores) == 1:
            return scores[0]
        return np.stack(scores, axis=1)

    def predict(self, X):
        scores = self.decision_function(X)
        if scores.ndim == 1:
            return self.classes_[(scores >= 0).astype(int)]
        return self.classes_[np.argmax(scores, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "machines_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "gamma": self.gamma_,
            "machines": [
                {
                    "support_vectors": m["support_vectors"].tolist(),
                    "dual_coef": m["dual_coef"].tolist(),
                    "bias": m["bias"],
                }
                for m in self.machines_
            ],
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.gamma_ = float(state["gamma"])
        self.machines_ = [
            {
                "support_vectors": np.asarray(m["support_vectors"], dtype=float).reshape(
                    -1, self.n_features_in_
                ),
                "dual_coef": np.asarray(m["dual_coef"], dtype=float),
                "bias": float(m["bias"]),
            }
            for m in state["machines"]
        ]
        return self
