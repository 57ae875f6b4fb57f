"""Run configuration shared by the CLI commands."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

from .errors import InvalidArgumentError


@dataclass
class RunConfig:
    seed: int = 0
    bin_width_hu: float = 25.0
    target_spacing_mm: float = 1.0
    cutoff_fraction: float = 0.25
    n_splits: int = 10
    train_fraction: float = 0.8
    screen_ba_threshold: float = 0.60
    screen_gap_threshold: float = 0.20
    # which non-uniformity column the canonical selected-feature set maps to
    glszm_nonuniformity: str = "gray_level"
    glrlm_nonuniformity: str = "run_length"
    ensemble_mode: str = "hierarchical"

    def __post_init__(self):
        if self.bin_width_hu <= 0:
            raise InvalidArgumentError("bin_width_hu must be positive")
        if self.target_spacing_mm <= 0:
            raise InvalidArgumentError("target_spacing_mm must be positive")
        if not 0 < self.cutoff_fraction <= 1:
            raise InvalidArgumentError("cutoff_fraction must be in (0, 1]")
        if self.n_splits < 1:
            raise InvalidArgumentError("n_splits must be >= 1")
        if not 0 < self.train_fraction < 1:
            raise InvalidArgumentError("train_fraction must be in (0, 1)")
        if not 0 <= self.screen_ba_threshold <= 1:
            raise InvalidArgumentError("screen_ba_threshold must be in [0, 1]")
        if self.screen_gap_threshold < 0:
            raise InvalidArgumentError("screen_gap_threshold must be nonnegative")
        if self.glszm_nonuniformity not in ("gray_level", "size_zone"):
            raise InvalidArgumentError(
                "glszm_nonuniformity must be 'gray_level' or 'size_zone'"
            )
        if self.glrlm_nonuniformity not in ("run_length", "gray_level"):
            raise InvalidArgumentError(
                "glrlm_nonuniformity must be 'run_length' or 'gray_level'"
            )
        if self.ensemble_mode not in ("hierarchical", "ovr"):
            raise InvalidArgumentError("ensemble_mode must be 'hierarchical' or 'ovr'")

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path) as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)
            fh.write("\n")
