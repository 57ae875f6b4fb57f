"""First-order intensity statistics of a masked region."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyRegionError
from ..volume import Mask, Volume, require_same_geometry

FIRST_ORDER_NAMES = (
    "energy",
    "total_energy",
    "entropy",
    "minimum",
    "percentile_10",
    "percentile_90",
    "maximum",
    "mean",
    "median",
    "interquartile_range",
    "range",
    "mean_absolute_deviation",
    "robust_mean_absolute_deviation",
    "root_mean_squared",
    "skewness",
    "kurtosis",
    "variance",
    "uniformity",
)


def _histogram_probs(values: np.ndarray, bin_width: float) -> np.ndarray:
    levels = np.floor((values - values.min()) / bin_width).astype(np.int64)
    counts = np.bincount(levels)
    p = counts[counts > 0] / values.size
    return p


def first_order_features(
    v: Volume, m: Mask, bin_width_hu: float = 25.0
) -> dict[str, float]:
    """The 18 first-order features.

    Moments use the population convention; skewness and kurtosis are 0 for
    a constant region.  Percentiles interpolate linearly between order
    statistics at rank q*(n-1).  Entropy and uniformity are computed on
    the bin-width discretized histogram.
    """
    require_same_geometry(v, m, "volume and mask")
    sel = m.voxels
    if not sel.any():
        raise EmptyRegionError("first-order features need a nonempty region")
    x = v.voxels[sel].astype(np.float64)
    n = x.size
    voxel_volume = float(np.prod(v.spacing_mm))

    mean = float(x.mean())
    dev = x - mean
    m2 = float(np.mean(dev**2))
    m3 = float(np.mean(dev**3))
    m4 = float(np.mean(dev**4))
    energy = float(np.dot(x, x))

    p10, p25, p75, p90 = (float(np.percentile(x, q)) for q in (10, 25, 75, 90))
    robust = x[(x >= p10) & (x <= p90)]
    probs = _histogram_probs(x, bin_width_hu)

    return {
        "energy": energy,
        "total_energy": voxel_volume * energy,
        "entropy": float(-(probs * np.log2(probs)).sum()),
        "minimum": float(x.min()),
        "percentile_10": p10,
        "percentile_90": p90,
        "maximum": float(x.max()),
        "mean": mean,
        "median": float(np.median(x)),
        "interquartile_range": p75 - p25,
        "range": float(x.max() - x.min()),
        "mean_absolute_deviation": float(np.abs(dev).mean()),
        "robust_mean_absolute_deviation": float(
            np.abs(robust - robust.mean()).mean()
        ),
        "root_mean_squared": float(np.sqrt(energy / n)),
        "skewness": m3 / m2**1.5 if m2 > 0 else 0.0,
        "kurtosis": m4 / m2**2 if m2 > 0 else 0.0,
        "variance": m2,
        "uniformity": float((probs**2).sum()),
    }
