"""Per-patient feature vector assembly.

Five regions are extracted (disease within each lung, each whole lung,
heart), each contributing the four mandatory families; metadata (age,
gender, disease extent, number of diseased regions) and per-region
presence flags complete the vector.  Empty disease/heart regions are
zero-filled with their flag set to 0 so the table shape never varies.
"""

from __future__ import annotations

import numpy as np

from ..errors import EmptyRegionError, InvalidArgumentError
from ..segmetrics import disease_extent
from ..volume import Mask, MaskRole, Volume, connected_components, require_same_geometry
from .firstorder import FIRST_ORDER_NAMES, first_order_features
from .graymap import discretize
from .shape import SHAPE_NAMES, shape_features
from .texture import GLRLM_NAMES, GLSZM_NAMES, glrlm, glrlm_features, glszm, glszm_features

REGION_NAMES = ("disease_left", "disease_right", "lung_left", "lung_right", "heart")
FLAGGED_REGIONS = ("disease_left", "disease_right", "heart")
FAMILY_NAMES = ("firstorder", "shape", "glszm", "glrlm")
METADATA_NAMES = ("age", "gender", "disease_extent_pct", "n_disease_regions")

_FAMILY_FEATURES = {
    "firstorder": FIRST_ORDER_NAMES,
    "shape": SHAPE_NAMES,
    "glszm": GLSZM_NAMES,
    "glrlm": GLRLM_NAMES,
}


def region_feature_names(region: str) -> list[str]:
    return [
        f"{region}_{family}_{feat}"
        for family in FAMILY_NAMES
        for feat in _FAMILY_FEATURES[family]
    ]


def feature_names() -> list[str]:
    """Canonical column order of a feature vector (metadata, flags, regions)."""
    names = list(METADATA_NAMES)
    names.extend(f"{region}_present" for region in FLAGGED_REGIONS)
    for region in REGION_NAMES:
        names.extend(region_feature_names(region))
    return names


def extract_region_features(
    v: Volume, m: Mask, bin_width_hu: float = 25.0
) -> dict[str, float]:
    """All mandatory-family features of one nonempty region (unprefixed)."""
    feats: dict[str, float] = {}
    fo = first_order_features(v, m, bin_width_hu)
    feats.update((f"firstorder_{k}", fo[k]) for k in FIRST_ORDER_NAMES)
    sh = shape_features(m)
    feats.update((f"shape_{k}", sh[k]) for k in SHAPE_NAMES)
    gmap = discretize(v, m, bin_width_hu)
    sz = glszm_features(glszm(gmap))
    feats.update((f"glszm_{k}", sz[k]) for k in GLSZM_NAMES)
    rl = glrlm_features(glrlm(gmap))
    feats.update((f"glrlm_{k}", rl[k]) for k in GLRLM_NAMES)
    return feats


def _submask(parent: Mask, voxels: np.ndarray, role: MaskRole) -> Mask:
    return Mask(voxels, parent.spacing_mm, parent.origin_mm, role)


def extract_patient_features(
    v: Volume,
    lung_left: Mask,
    lung_right: Mask,
    disease: Mask,
    heart: Mask,
    age: float,
    gender: int,
    bin_width_hu: float = 25.0,
) -> dict[str, float]:
    """Full feature vector for one patient.

    Expects inputs already clipped and resampled to isotropic spacing.
    Lung masks must be nonempty; empty disease/heart regions are
    zero-filled with the matching ``*_present`` flag cleared.
    """
    for m, what in ((lung_left, "left lung"), (lung_right, "right lung"),
                    (disease, "disease"), (heart, "heart")):
        require_same_geometry(v, m, f"volume and {what} mask")
    if lung_left.count() == 0 or lung_right.count() == 0:
        raise EmptyRegionError("lung masks must be nonempty")
    if not isinstance(gender, (int, np.integer)) or gender not in (0, 1):
        raise InvalidArgumentError("gender must be 0 (female) or 1 (male)")

    regions = {
        "disease_left": _submask(
            disease, disease.voxels & lung_left.voxels, MaskRole.DISEASE
        ),
        "disease_right": _submask(
            disease, disease.voxels & lung_right.voxels, MaskRole.DISEASE
        ),
        "lung_left": lung_left,
        "lung_right": lung_right,
        "heart": heart,
    }

    out: dict[str, float] = {
        "age": float(age),
        "gender": float(gender),
        "disease_extent_pct": disease_extent(disease, lung_left, lung_right),
        "n_disease_regions": float(connected_components(disease, 26).count),
    }
    for region in FLAGGED_REGIONS:
        out[f"{region}_present"] = 1.0 if regions[region].count() > 0 else 0.0
    for region in REGION_NAMES:
        names = region_feature_names(region)
        mask = regions[region]
        if mask.count() == 0:
            out.update((name, 0.0) for name in names)
        else:
            feats = extract_region_features(v, mask, bin_width_hu)
            out.update(
                (f"{region}_{key}", value) for key, value in feats.items()
            )
    return out
