"""Segmentation agreement metrics and the paired statistics used to
compare automated against manual delineations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidArgumentError, UndefinedMetricError
from .volume import Mask, require_same_geometry


@dataclass(frozen=True)
class AgreementReport:
    dice: float
    hausdorff_mm: float
    extent_a_pct: float | None = None
    extent_b_pct: float | None = None


def dice_score(a: Mask, b: Mask) -> float:
    """2|A∩B| / (|A|+|B|); defined as 1.0 when both masks are empty."""
    require_same_geometry(a, b, "masks")
    na, nb = a.count(), b.count()
    if na == 0 and nb == 0:
        return 1.0
    inter = int(np.logical_and(a.voxels, b.voxels).sum())
    return 2.0 * inter / (na + nb)


def _foreground_points_mm(m: Mask) -> np.ndarray:
    coords = np.argwhere(m.voxels).astype(np.float64)
    return coords * np.asarray(m.spacing_mm)


def hausdorff(a: Mask, b: Mask, percentile: float | None = None) -> float:
    """Symmetric Hausdorff distance in mm between foreground voxel centers.

    The exact maximum of the two directed distances by default; pass a
    percentile (e.g. 95) for the robust variant.
    """
    require_same_geometry(a, b, "masks")
    if a.count() == 0 or b.count() == 0:
        raise UndefinedMetricError("Hausdorff distance undefined for an empty mask")
    pa = _foreground_points_mm(a)
    pb = _foreground_points_mm(b)
    d_ab = cKDTree(pb).query(pa)[0]
    d_ba = cKDTree(pa).query(pb)[0]
    if percentile is None:
        return float(max(d_ab.max(), d_ba.max()))
    if not 0 < percentile <= 100:
        raise InvalidArgumentError("percentile must be in (0, 100]")
    return float(
        max(np.percentile(d_ab, percentile), np.percentile(d_ba, percentile))
    )


def disease_extent(disease: Mask, lung_left: Mask, lung_right: Mask) -> float:
    """Percentage of the lung union occupied by disease."""
    require_same_geometry(disease, lung_left, "disease and left lung")
    require_same_geometry(disease, lung_right, "disease and right lung")
    lungs = np.logical_or(lung_left.voxels, lung_right.voxels)
    n_lung = int(lungs.sum())
    if n_lung == 0:
        raise UndefinedMetricError("disease extent undefined for empty lungs")
    n_dis = int(np.logical_and(disease.voxels, lungs).sum())
    return 100.0 * n_dis / n_lung


# ---------------------------------------------------------------------------
# Student's t machinery.  The regularized incomplete beta is evaluated with
# the modified-Lentz continued fraction, accurate to well below 1e-10.

def _betacf(a: float, b: float, x: float) -> float:
    tiny = 1e-300
    eps = 1e-16
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _betai(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    bt = math.exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def student_t_two_sided_p(t: float, df: float) -> float:
    """P(|T_df| >= |t|) for Student's t."""
    if df <= 0:
        raise InvalidArgumentError("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return _betai(0.5 * df, 0.5, df / (df + t * t))


def paired_t_test(x, y) -> tuple[float, float]:
    """Two-sided paired Student's t-test; returns (t, p).

    Degenerate difference vectors take their limit values: all-zero
    differences give (0, 1); zero-variance nonzero differences give
    (+/-inf, 0).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidArgumentError("paired t-test needs equal-length 1D samples")
    n = x.size
    if n < 2:
        raise InvalidArgumentError("paired t-test needs at least 2 pairs")
    d = x - y
    mean = d.mean()
    sd = d.std(ddof=1)
    if sd == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), 0.0
    t = mean / (sd / math.sqrt(n))
    return float(t), student_t_two_sided_p(t, n - 1)


def pearson(x, y) -> float:
    """Product-moment correlation; errors on constant input."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidArgumentError("pearson needs equal-length 1D samples")
    if x.size < 2:
        raise InvalidArgumentError("pearson needs at least 2 samples")
    xd = x - x.mean()
    yd = y - y.mean()
    sx = math.sqrt(float(np.dot(xd, xd)))
    sy = math.sqrt(float(np.dot(yd, yd)))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedMetricError("pearson undefined for a constant sample")
    r = float(np.dot(xd, yd)) / (sx * sy)
    return min(1.0, max(-1.0, r))
