"""The 13 evaluated classifiers, classification metrics, and the
train/validation screening rule."""

from .metrics import MetricsReport, classification_metrics, confusion_matrix
from .tree import DecisionTreeClassifier
from .forest import RandomForestClassifier
from .boost import AdaBoostClassifier
from .svm import SVMClassifier
from .bayes import BernoulliNBClassifier, GaussianNBClassifier
from .neighbors import KNeighborsClassifier
from .gp import GaussianProcessClassifier
from .mlp import MLPClassifier
from .qda import QDAClassifier
from .specs import (
    ClassifierSpec,
    RETAINED_SEVEN,
    all_specs,
    build_classifier,
    model_from_state,
    model_to_state,
    retained_specs,
    spec_by_name,
)
from .screen import ScreenRow, method_screen

__all__ = [
    "MetricsReport",
    "classification_metrics",
    "confusion_matrix",
    "DecisionTreeClassifier",
    "RandomForestClassifier",
    "AdaBoostClassifier",
    "SVMClassifier",
    "GaussianNBClassifier",
    "BernoulliNBClassifier",
    "KNeighborsClassifier",
    "GaussianProcessClassifier",
    "MLPClassifier",
    "QDAClassifier",
    "ClassifierSpec",
    "RETAINED_SEVEN",
    "all_specs",
    "retained_specs",
    "spec_by_name",
    "build_classifier",
    "model_to_state",
    "model_from_state",
    "ScreenRow",
    "method_screen",
]
