"""The 13 evaluated classifier configurations and fitted-model
(de)serialization.

Hyperparameters of the retained seven are fixed: all SVMs use C = 0.25
(polynomial kernel of degree 3, RBF kernel coefficient 3), the decision
tree is depth-limited to 3, the random forest holds 8 such trees, and
AdaBoost boosts a depth-2 tree three times.  Every method receives
inverse-frequency class weighting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bayes import BernoulliNBClassifier, GaussianNBClassifier
from .boost import AdaBoostClassifier
from .forest import RandomForestClassifier
from .gp import GaussianProcessClassifier
from .mlp import MLPClassifier
from .neighbors import KNeighborsClassifier
from .qda import QDAClassifier
from .svm import SVMClassifier
from .tree import DecisionTreeClassifier
from ..errors import InvalidArgumentError

_REGISTRY = {
    "knn": KNeighborsClassifier,
    "svm": SVMClassifier,
    "gp": GaussianProcessClassifier,
    "tree": DecisionTreeClassifier,
    "forest": RandomForestClassifier,
    "mlp": MLPClassifier,
    "adaboost": AdaBoostClassifier,
    "gaussian_nb": GaussianNBClassifier,
    "bernoulli_nb": BernoulliNBClassifier,
    "qda": QDAClassifier,
}
_KIND_OF = {cls: kind for kind, cls in _REGISTRY.items()}


@dataclass(frozen=True)
class ClassifierSpec:
    name: str
    kind: str
    params: dict = field(default_factory=dict)


def all_specs() -> list[ClassifierSpec]:
    """The 13 evaluated methods, in report order."""
    cw = {"class_weight": "balanced"}
    return [
        ClassifierSpec("nearest_neighbors", "knn", {"n_neighbors": 5, **cw}),
        ClassifierSpec("linear_svm", "svm", {"kernel": "linear", "C": 0.25, **cw}),
        ClassifierSpec(
            "poly_svm",
            "svm",
            {"kernel": "poly", "C": 0.25, "degree": 3, "gamma": 1.0, "coef0": 1.0, **cw},
        ),
        ClassifierSpec("sigmoid_svm", "svm", {"kernel": "sigmoid", "C": 0.25, **cw}),
        ClassifierSpec("rbf_svm", "svm", {"kernel": "rbf", "C": 0.25, "gamma": 3.0, **cw}),
        ClassifierSpec("gaussian_process", "gp", dict(cw)),
        ClassifierSpec("decision_tree", "tree", {"max_depth": 3, **cw}),
        ClassifierSpec(
            "random_forest", "forest", {"n_estimators": 8, "max_depth": 3, **cw}
        ),
        ClassifierSpec("mlp", "mlp", {"hidden_units": 32, **cw}),
        ClassifierSpec(
            "adaboost", "adaboost", {"n_estimators": 3, "base_max_depth": 2, **cw}
        ),
        ClassifierSpec("gaussian_nb", "gaussian_nb", dict(cw)),
        ClassifierSpec("bernoulli_nb", "bernoulli_nb", {"binarize": 0.5, **cw}),
        ClassifierSpec("qda", "qda", {"reg": 1e-6, **cw}),
    ]


RETAINED_SEVEN = (
    "linear_svm",
    "poly_svm",
    "rbf_svm",
    "decision_tree",
    "random_forest",
    "adaboost",
    "gaussian_nb",
)


def spec_by_name(name: str) -> ClassifierSpec:
    for spec in all_specs():
        if spec.name == name:
            return spec
    raise InvalidArgumentError(f"unknown classifier spec {name!r}")


def retained_specs() -> list[ClassifierSpec]:
    return [spec_by_name(name) for name in RETAINED_SEVEN]


def build_classifier(spec: ClassifierSpec, seed: int = 0):
    try:
        cls = _REGISTRY[spec.kind]
    except KeyError:
        raise InvalidArgumentError(f"unknown classifier kind {spec.kind!r}") from None
    params = dict(spec.params)
    if "seed" in cls._param_names():
        params.setdefault("seed", seed)
    return cls(**params)


def model_to_state(estimator) -> dict:
    kind = _KIND_OF.get(type(estimator))
    if kind is None:
        raise InvalidArgumentError(
            f"{type(estimator).__name__} is not a registered classifier"
        )
    return {
        "kind": kind,
        "params": estimator.get_params(),
        "state": estimator.to_state(),
    }


def model_from_state(d: dict):
    try:
        cls = _REGISTRY[d["kind"]]
    except KeyError:
        raise InvalidArgumentError(f"unknown classifier kind {d.get('kind')!r}") from None
    return cls(**d["params"]).from_state(d["state"])
