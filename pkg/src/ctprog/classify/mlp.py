"""Single-hidden-layer perceptron trained full-batch with Adam."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, check_is_fitted
from .util import check_predict_input, prepare_fit


def _softmax(z):
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class MLPClassifier(BaseEstimator):
    def __init__(
        self,
        hidden_units: int = 32,
        learning_rate: float = 0.01,
        epochs: int = 300,
        class_weight=None,
        seed: int = 0,
    ):
        self.hidden_units = hidden_units
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.class_weight = class_weight
        self.seed = seed
        self.classes_ = None
        self.weights_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y_enc, classes, w = prepare_fit(X, y, sample_weight, self.class_weight)
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        n, p = X.shape
        k = classes.size
        h = self.hidden_units
        rng = np.random.default_rng(self.seed)
        W1 = rng.normal(0.0, 1.0 / np.sqrt(p), size=(p, h))
        b1 = np.zeros(h)
        W2 = rng.normal(0.0, 1.0 / np.sqrt(h), size=(h, k))
        b2 = np.zeros(k)

        onehot = np.zeros((n, k))
        onehot[np.arange(n), y_enc] = 1.0
        wn = w / w.sum()

        params = [W1, b1, W2, b2]
        m_t = [np.zeros_like(p_) for p_ in params]
        v_t = [np.zeros_like(p_) for p_ in params]
        beta1, beta2, eps = 0.9, 0.999, 1e-8

        for step in range(1, self.epochs + 1):
            hidden = np.tanh(X @ W1 + b1)
            probs = _softmax(hidden @ W2 + b2)
            # weighted cross-entropy gradient at the logits
            delta2 = (probs - onehot) * wn[:, None]
            grads = [None] * 4
            grads[2] = hidden.T @ delta2
            grads[3] = delta2.sum(axis=0)
            delta1 = (delta2 @ W2.T) * (1.0 - hidden**2)
            grads[0] = X.T @ delta1
            grads[1] = delta1.sum(axis=0)
            for idx in range(4):
                m_t[idx] = beta1 * m_t[idx] + (1 - beta1) * grads[idx]
                v_t[idx] = beta2 * v_t[idx] + (1 - beta2) * grads[idx] ** 2
                m_hat = m_t[idx] / (1 - beta1**step)
                v_hat = v_t[idx] / (1 - beta2**step)
                params[idx] -= self.learning_rate * m_hat / (np.sqrt(v_hat) + eps)

        self.weights_ = {"W1": W1, "b1": b1, "W2": W2, "b2": b2}
        return self

    def predict(self, X):
        check_is_fitted(self, "weights_")
        X = check_predict_input(X, self.n_features_in_)
        w = self.weights_
        hidden = np.tanh(X @ w["W1"] + w["b1"])
        logits = hidden @ w["W2"] + w["b2"]
        return self.classes_[np.argmax(logits, axis=1)]

    def to_state(self) -> dict:
        check_is_fitted(self, "weights_")
        return {
            "classes": self.classes_.tolist(),
            "n_features": self.n_features_in_,
            "weights": {k: v.tolist() for k, v in self.weights_.items()},
        }

    def from_state(self, state: dict):
        self.classes_ = np.asarray(state["classes"])
        self.n_features_in_ = int(state["n_features"])
        self.weights_ = {
            k: np.asarray(v, dtype=float) for k, v in state["weights"].items()
        }
        self.weights_["W1"] = self.weights_["W1"].reshape(self.n_features_in_, -1)
        return self
