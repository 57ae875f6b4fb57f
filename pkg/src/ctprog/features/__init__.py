"""Radiomics feature extraction on masked CT regions."""

from .graymap import GrayMap, discretize
from .firstorder import FIRST_ORDER_NAMES, first_order_features
from .shape import SHAPE_NAMES, shape_features
from .texture import (
    GLRLM_NAMES,
    GLSZM_NAMES,
    RunLengthMatrices,
    SizeZoneMatrix,
    glrlm,
    glrlm_features,
    glszm,
    glszm_features,
)
from .extract import (
    FAMILY_NAMES,
    REGION_NAMES,
    feature_names,
    extract_patient_features,
)
from .normalize import MinMaxNormalizer

__all__ = [
    "GrayMap",
    "discretize",
    "FIRST_ORDER_NAMES",
    "first_order_features",
    "SHAPE_NAMES",
    "shape_features",
    "GLSZM_NAMES",
    "GLRLM_NAMES",
    "SizeZoneMatrix",
    "RunLengthMatrices",
    "glszm",
    "glszm_features",
    "glrlm",
    "glrlm_features",
    "FAMILY_NAMES",
    "REGION_NAMES",
    "feature_names",
    "extract_patient_features",
    "MinMaxNormalizer",
]
