"""Minimal estimator base and input validation helpers.

Estimators follow the scikit-learn protocol (``fit``/``predict`` or
``transform``, ``get_params``/``set_params``, learned attributes with a
trailing underscore) so they compose with the wider ecosystem, without
making scikit-learn itself a dependency.
"""

from __future__ import annotations

import inspect

import numpy as np

from .errors import InvalidArgumentError, NotFittedError


class BaseEstimator:
    """get_params/set_params via constructor-signature introspection."""

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise InvalidArgumentError(
                    f"invalid parameter {key!r} for {type(self).__name__}"
                )
            setattr(self, key, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def clone(estimator):
    """Fresh unfitted copy built from the constructor parameters."""
    return type(estimator)(**estimator.get_params())


def check_is_fitted(estimator, attribute: str):
    if getattr(estimator, attribute, None) is None:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted; call fit first"
        )


def check_array(X, *, ndim: int = 2, name: str = "X") -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1 and ndim == 2:
        X = X.reshape(-1, 1)
    if X.ndim != ndim:
        raise InvalidArgumentError(f"{name} must be {ndim}-dimensional, got {X.ndim}")
    if not np.all(np.isfinite(X)):
        raise InvalidArgumentError(f"{name} contains non-finite values")
    return X


def check_X_y(X, y):
    X = check_array(X)
    y = np.asarray(y)
    if y.ndim != 1:
        raise InvalidArgumentError("y must be 1-dimensional")
    if len(y) != X.shape[0]:
        raise InvalidArgumentError(
            f"X has {X.shape[0]} rows but y has {len(y)} entries"
        )
    return X, y


def check_sample_weight(sample_weight, n: int) -> np.ndarray:
    if sample_weight is None:
        return np.ones(n)
    w = np.asarray(sample_weight, dtype=float)
    if w.shape != (n,):
        raise InvalidArgumentError("sample_weight length does not match X")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidArgumentError("sample_weight must be finite and nonnegative")
    return w
