"""Gray-level size-zone and run-length texture matrices.

Zones are maximal 26-connected sets of equal-level voxels; runs are
maximal collinear equal-level sequences along each of the 13 unique 3D
directions.  Run extraction is vectorized by pairing run starts with run
ends after a lexicographic (line, position) sort, so it stays fast on
regions with tens of thousands of voxels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..errors import EmptyRegionError
from .graymap import GrayMap

# one representative per +/- direction pair
DIRECTIONS_13 = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (1, -1, 0),
    (1, 0, 1),
    (1, 0, -1),
    (0, 1, 1),
    (0, 1, -1),
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 1),
    (1, -1, -1),
)

GLSZM_NAMES = (
    "small_area_emphasis",
    "large_area_emphasis",
    "gray_level_nonuniformity",
    "gray_level_nonuniformity_normalized",
    "size_zone_nonuniformity",
    "size_zone_nonuniformity_normalized",
    "zone_percentage",
    "gray_level_variance",
    "zone_variance",
    "zone_entropy",
    "low_gray_level_zone_emphasis",
    "high_gray_level_zone_emphasis",
    "small_area_low_gray_level_emphasis",
    "small_area_high_gray_level_emphasis",
    "large_area_low_gray_level_emphasis",
    "large_area_high_gray_level_emphasis",
)

GLRLM_NAMES = (
    "short_run_emphasis",
    "long_run_emphasis",
    "gray_level_nonuniformity",
    "gray_level_nonuniformity_normalized",
    "run_length_nonuniformity",
    "run_length_nonuniformity_normalized",
    "run_percentage",
    "gray_level_variance",
    "run_variance",
    "run_entropy",
    "low_gray_level_run_emphasis",
    "high_gray_level_run_emphasis",
    "short_run_low_gray_level_emphasis",
    "short_run_high_gray_level_emphasis",
    "long_run_low_gray_level_emphasis",
    "long_run_high_gray_level_emphasis",
)


@dataclass(frozen=True)
class SizeZoneMatrix:
    """counts[i-1][j-1] = zones of gray level i and size j; nz = total zones."""

    counts: np.ndarray
    nz: int


@dataclass(frozen=True)
class RunLengthMatrices:
    """counts[d][i-1][j-1] = runs of level i, length j along direction d."""

    counts: np.ndarray
    directions: tuple = DIRECTIONS_13

    @property
    def nr(self) -> np.ndarray:
        return self.counts.sum(axis=(1, 2))


def _bbox_levels(g: GrayMap) -> np.ndarray:
    sel = g.levels > 0
    if not sel.any():
        raise EmptyRegionError("texture matrices need a nonempty region")
    xs, ys, zs = np.nonzero(sel)
    return g.levels[
        xs.min() : xs.max() + 1, ys.min() : ys.max() + 1, zs.min() : zs.max() + 1
    ]


def glszm(g: GrayMap, connectivity: int = 26) -> SizeZoneMatrix:
    levels = _bbox_levels(g)
    structure = (
        np.ones((3, 3, 3), dtype=bool)
        if connectivity == 26
        else ndimage.generate_binary_structure(3, 1)
    )
    per_level: list[np.ndarray] = []
    max_size = 1
    for level in range(1, g.ng + 1):
        labeled, n_zones = ndimage.label(levels == level, structure=structure)
        if n_zones == 0:
            per_level.append(np.zeros(0, dtype=np.int64))
            continue
        sizes = np.bincount(labeled.ravel())[1:]
        size_hist = np.bincount(sizes)[1:]  # index j-1 = count of zones of size j
        per_level.append(size_hist.astype(np.int64))
        max_size = max(max_size, len(size_hist))
    counts = np.zeros((g.ng, max_size), dtype=np.int64)
    for i, hist in enumerate(per_level):
        counts[i, : len(hist)] = hist
    return SizeZoneMatrix(counts, int(counts.sum()))


def glrlm(g: GrayMap) -> RunLengthMatrices:
    levels = _bbox_levels(g)
    padded = np.pad(levels, 1)
    xs, ys, zs = np.nonzero(levels)
    lv = levels[xs, ys, zs].astype(np.int64)
    n_in = lv.size
    max_len = max(levels.shape)
    counts = np.zeros((len(DIRECTIONS_13), g.ng, max_len), dtype=np.int64)

    span = max(levels.shape)
    base = 8 * span  # big enough for base-point coords in (-3*span, 3*span)
    for d_idx, (dx, dy, dz) in enumerate(DIRECTIONS_13):
        prev = padded[xs + 1 - dx, ys + 1 - dy, zs + 1 - dz]
        nxt = padded[xs + 1 + dx, ys + 1 + dy, zs + 1 + dz]
        is_start = prev != lv
        is_end = nxt != lv
        # projection along d advances by |d|^2 per voxel step
        step = dx * dx + dy * dy + dz * dz
        t = (xs * dx + ys * dy + zs * dz).astype(np.int64)
        # line identifier: the base point coord - t*d, offset to stay positive
        key = (
            (xs - t * dx + 4 * span) * base * base
            + (ys - t * dy + 4 * span) * base
            + (zs - t * dz + 4 * span)
        )
        s_order = np.lexsort((t[is_start], key[is_start]))
        e_order = np.lexsort((t[is_end], key[is_end]))
        run_len = (t[is_end][e_order] - t[is_start][s_order]) // step + 1
        run_lv = lv[is_start][s_order]
        np.add.at(counts[d_idx], (run_lv - 1, run_len - 1), 1)
        assert int((counts[d_idx].sum(axis=0) * np.arange(1, max_len + 1)).sum()) == n_in
    return RunLengthMatrices(counts)


def _marginal_stats(counts: np.ndarray):
    """Common helpers for a level-by-size/length count matrix."""
    n = counts.sum()
    p = counts / n
    ng, nj = counts.shape
    i = np.arange(1, ng + 1, dtype=np.float64)[:, None]
    j = np.arange(1, nj + 1, dtype=np.float64)[None, :]
    p_i = p.sum(axis=1)
    p_j = p.sum(axis=0)
    return n, p, i, j, p_i, p_j


def _matrix_features(counts: np.ndarray, kind: str) -> dict[str, float]:
    n, p, i, j, p_i, p_j = _marginal_stats(counts)
    n_voxels = float((counts.sum(axis=0) * np.arange(1, counts.shape[1] + 1)).sum())
    mu_i = float((p_i * i[:, 0]).sum())
    mu_j = float((p_j * j[0, :]).sum())
    nonzero = p[p > 0]
    small, large = ("small_area", "large_area") if kind == "zone" else (
        "short_run",
        "long_run",
    )
    unit = "zone" if kind == "zone" else "run"
    feats = {
        f"{small}_emphasis": float((p / j**2).sum()),
        f"{large}_emphasis": float((p * j**2).sum()),
        "gray_level_nonuniformity": float((counts.sum(axis=1) ** 2).sum() / n),
        "gray_level_nonuniformity_normalized": float(
            (counts.sum(axis=1) ** 2).sum() / n**2
        ),
        f"{'size_zone' if kind == 'zone' else 'run_length'}_nonuniformity": float(
            (counts.sum(axis=0) ** 2).sum() / n
        ),
        f"{'size_zone' if kind == 'zone' else 'run_length'}_nonuniformity_normalized": float(
            (counts.sum(axis=0) ** 2).sum() / n**2
        ),
        f"{unit}_percentage": float(n / n_voxels),
        "gray_level_variance": float((p * (i - mu_i) ** 2).sum()),
        f"{unit}_variance": float((p * (j - mu_j) ** 2).sum()),
        f"{unit}_entropy": float(-(nonzero * np.log2(nonzero)).sum()),
        f"low_gray_level_{unit}_emphasis": float((p / i**2).sum()),
        f"high_gray_level_{unit}_emphasis": float((p * i**2).sum()),
        f"{small}_low_gray_level_emphasis": float((p / (i**2 * j**2)).sum()),
        f"{small}_high_gray_level_emphasis": float((p * i**2 / j**2).sum()),
        f"{large}_low_gray_level_emphasis": float((p * j**2 / i**2).sum()),
        f"{large}_high_gray_level_emphasis": float((p * i**2 * j**2).sum()),
    }
    return feats


def glszm_features(z: SizeZoneMatrix) -> dict[str, float]:
    if z.nz < 1:
        raise EmptyRegionError("size-zone matrix has no zones")
    feats = _matrix_features(z.counts, "zone")
    return {name: feats[name] for name in GLSZM_NAMES}


def glrlm_features(r: RunLengthMatrices) -> dict[str, float]:
    """Per-direction features averaged arithmetically over the 13 directions."""
    if int(r.counts.sum()) < 1:
        raise EmptyRegionError("run-length matrices have no runs")
    acc = {name: 0.0 for name in GLRLM_NAMES}
    n_dir = r.counts.shape[0]
    for d in range(n_dir):
        feats = _matrix_features(r.counts[d], "run")
        for name in GLRLM_NAMES:
            acc[name] += feats[name]
    return {name: acc[name] / n_dir for name in GLRLM_NAMES}
