"""Consensus fusion of candidate segmentations and the training losses.

Candidate masks from independent models are merged by majority vote;
probability maps from 2D and 3D models are merged by a normalized
weighted mean.  The Dice loss and weighted cross entropy are provided as
verifiable numerical kernels together with their analytic gradients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError
from .volume import Mask, require_same_geometry


@dataclass(frozen=True)
class ProbMap:
    """Predicted foreground probability per voxel, values in [0, 1]."""

    voxels: np.ndarray
    spacing_mm: tuple[float, float, float]
    origin_mm: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        arr = np.asarray(self.voxels, dtype=np.float64)
        if arr.ndim != 3:
            raise InvalidArgumentError("probability map must be 3D")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise InvalidArgumentError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "voxels", arr)
        object.__setattr__(self, "spacing_mm", tuple(float(s) for s in self.spacing_mm))
        object.__setattr__(self, "origin_mm", tuple(float(o) for o in self.origin_mm))

    @property
    def dims(self):
        return self.voxels.shape

    def same_geometry(self, other):
        return self.dims == other.dims and self.spacing_mm == other.spacing_mm


@dataclass(frozen=True)
class LossParams:
    """beta weights the minority (foreground) class; epsilon stabilizes logs."""

    beta: float = 1.0
    epsilon: float = 1e-7

    def __post_init__(self):
        if self.beta <= 0:
            raise InvalidArgumentError("beta must be positive")
        if not 0 < self.epsilon <= 1e-6:
            raise InvalidArgumentError("epsilon must be in (0, 1e-6]")


def majority_vote(masks: Sequence[Mask], tie_foreground: bool = True) -> Mask:
    """Voxelwise majority over K aligned masks.

    Foreground wins on a strict majority; exact ties (even K) resolve to
    foreground by default, preferring segmentation sensitivity.
    """
    if len(masks) == 0:
        raise InvalidArgumentError("majority_vote needs at least one mask")
    ref = masks[0]
    for m in masks[1:]:
        require_same_geometry(ref, m, "vote inputs")
    votes = np.zeros(ref.dims, dtype=np.int32)
    for m in masks:
        votes += m.voxels
    k = len(masks)
    if tie_foreground:
        out = 2 * votes >= k
    else:
        out = 2 * votes > k
    return Mask(out, ref.spacing_mm, ref.origin_mm, ref.role)


def fuse_probabilities(maps: Sequence[ProbMap], weights=None) -> ProbMap:
    """Voxelwise weighted mean of probability maps (weights normalized to 1)."""
    if len(maps) == 0:
        raise InvalidArgumentError("fuse_probabilities needs at least one map")
    ref = maps[0]
    for m in maps[1:]:
        if not ref.same_geometry(m):
            raise InvalidArgumentError("probability maps have mismatched geometry")
    if weights is None:
        weights = np.ones(len(maps))
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (len(maps),) or np.any(w < 0):
        raise InvalidArgumentError("weights must be nonnegative, one per map")
    total = w.sum()
    if total == 0:
        raise InvalidArgumentError("weights must not all be zero")
    w = w / total
    fused = np.zeros(ref.dims, dtype=np.float64)
    for wi, m in zip(w, maps):
        fused += wi * m.voxels
    # weighted means of [0,1] values can exceed 1 by rounding only
    return ProbMap(np.clip(fused, 0.0, 1.0), ref.spacing_mm, ref.origin_mm)


def threshold(p: ProbMap, t: float = 0.5) -> Mask:
    """Binarize: foreground iff probability >= t."""
    if not 0.0 <= t <= 1.0:
        raise InvalidArgumentError(f"threshold must be in [0, 1], got {t}")
    return Mask(p.voxels >= t, p.spacing_mm, p.origin_mm)


def _roi_values(p: ProbMap, g: Mask, roi: Mask | None):
    require_same_geometry(p, g, "prediction and ground truth")
    if roi is not None:
        require_same_geometry(p, roi, "prediction and roi")
        sel = roi.voxels
        return p.voxels[sel], g.voxels[sel].astype(np.float64)
    return p.voxels.ravel(), g.voxels.ravel().astype(np.float64)


def dice_loss(p: ProbMap, g: Mask, roi: Mask | None = None) -> float:
    """DL = 1 - (2*sum(p*g) + 1) / (sum(p) + sum(g) + 1), sums over roi."""
    pv, gv = _roi_values(p, g, roi)
    return float(1.0 - (2.0 * np.dot(pv, gv) + 1.0) / (pv.sum() + gv.sum() + 1.0))


def weighted_cross_entropy(
    p: ProbMap, g: Mask, params: LossParams = LossParams(), roi: Mask | None = None
) -> float:
    """Mean over roi voxels of -(beta*g*log(p) + (1-g)*log(1-p)).

    Probabilities are clamped to [epsilon, 1-epsilon] before the logs.
    """
    pv, gv = _roi_values(p, g, roi)
    if pv.size == 0:
        raise InvalidArgumentError("loss undefined over an empty roi")
    pc = np.clip(pv, params.epsilon, 1.0 - params.epsilon)
    terms = params.beta * gv * np.log(pc) + (1.0 - gv) * np.log1p(-pc)
    return float(-terms.mean())


def loss_gradient(
    loss: str,
    p: ProbMap,
    g: Mask,
    params: LossParams = LossParams(),
    roi: Mask | None = None,
) -> np.ndarray:
    """Analytic d(loss)/dp per voxel, zero outside the roi.

    For WCE the gradient is zero where the clamp is active (the clamped
    loss is locally flat in p there).
    """
    require_same_geometry(p, g, "prediction and ground truth")
    if roi is not None:
        require_same_geometry(p, roi, "prediction and roi")
        sel = roi.voxels
    else:
        sel = np.ones(p.dims, dtype=bool)
    pv = p.voxels
    gv = g.voxels.astype(np.float64)
    grad = np.zeros(p.dims, dtype=np.float64)

    if loss == "dice":
        s_pg = float((pv * gv)[sel].sum())
        denom = float(pv[sel].sum() + gv[sel].sum() + 1.0)
        grad[sel] = (2.0 * s_pg + 1.0) / denom**2 - 2.0 * gv[sel] / denom
    elif loss == "wce":
        n = int(sel.sum())
        if n == 0:
            raise InvalidArgumentError("loss undefined over an empty roi")
        inside = sel & (pv > params.epsilon) & (pv < 1.0 - params.epsilon)
        grad[inside] = (
            -(params.beta * gv[inside] / pv[inside] - (1.0 - gv[inside]) / (1.0 - pv[inside]))
            / n
        )
    else:
        raise InvalidArgumentError(f"unknown loss {loss!r}; use 'dice' or 'wce'")
    return grad
