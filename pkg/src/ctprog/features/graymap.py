"""Gray-level discretization of a masked region.

Texture matrices operate on integer levels; HU values inside the mask are
binned with a fixed bin width anchored at the region minimum, so levels
are invariant to a constant intensity shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyRegionError, InvalidArgumentError
from ..volume import Mask, Volume, require_same_geometry


@dataclass(frozen=True)
class GrayMap:
    """levels[x,y,z] in 1..ng inside the mask, 0 outside."""

    levels: np.ndarray
    ng: int
    bin_width_hu: float


def discretize(v: Volume, m: Mask, bin_width_hu: float = 25.0) -> GrayMap:
    """level = floor((hu - min_in_mask) / bin_width) + 1."""
    if bin_width_hu <= 0:
        raise InvalidArgumentError("bin width must be positive")
    require_same_geometry(v, m, "volume and mask")
    sel = m.voxels
    if not sel.any():
        raise EmptyRegionError("cannot discretize an empty region")
    values = v.voxels[sel]
    levels = np.zeros(v.dims, dtype=np.int32)
    levels[sel] = np.floor((values - values.min()) / bin_width_hu).astype(np.int32) + 1
    return GrayMap(levels, int(levels.max()), float(bin_width_hu))
