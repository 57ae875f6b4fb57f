"""Per-patient feature table with deterministic CSV round-tripping.

CSV layout: header ``patient_id,<feature...>,outcome``; '.' decimal
separator, LF line endings, floats serialized with shortest round-trip
repr (exact re-parse).  Outcome is blank for unlabeled rows.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError


def _format_value(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


@dataclass
class FeatureTable:
    patient_ids: list[str]
    names: list[str]
    values: np.ndarray  # (n_patients, n_features)
    outcomes: np.ndarray | None = None  # int labels, NaN for unlabeled

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise SchemaError("feature values must be a 2D array")
        n, p = self.values.shape
        if len(self.patient_ids) != n:
            raise SchemaError("patient_ids length does not match rows")
        if len(self.names) != p:
            raise SchemaError("names length does not match columns")
        if len(set(self.names)) != p:
            raise SchemaError("feature names must be unique")
        if self.outcomes is not None:
            self.outcomes = np.asarray(self.outcomes, dtype=float)
            if self.outcomes.shape != (n,):
                raise SchemaError("outcomes length does not match rows")

    @property
    def n_patients(self) -> int:
        return self.values.shape[0]

    def column(self, name: str) -> np.ndarray:
        try:
            idx = self.names.index(name)
        except ValueError:
            raise SchemaError(f"feature table has no column {name!r}") from None
        return self.values[:, idx]

    def select(self, names) -> np.ndarray:
        missing = [n for n in names if n not in self.names]
        if missing:
            raise SchemaError(f"feature table is missing columns: {missing}")
        idx = [self.names.index(n) for n in names]
        return self.values[:, idx]

    def subset(self, rows) -> "FeatureTable":
        rows = np.asarray(rows)
        return FeatureTable(
            [self.patient_ids[i] for i in rows],
            list(self.names),
            self.values[rows],
            None if self.outcomes is None else self.outcomes[rows],
        )

    def labeled_outcomes(self) -> np.ndarray:
        """Integer outcomes; raises if any row is unlabeled."""
        if self.outcomes is None or np.any(np.isnan(self.outcomes)):
            raise SchemaError("feature table has unlabeled rows")
        return self.outcomes.astype(int)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["patient_id", *self.names, "outcome"])
            for i, pid in enumerate(self.patient_ids):
                row = [pid]
                row.extend(_format_value(x) for x in self.values[i])
                if self.outcomes is None or math.isnan(self.outcomes[i]):
                    row.append("")
                else:
                    row.append(str(int(self.outcomes[i])))
                writer.writerow(row)

    @classmethod
    def read_csv(cls, path) -> "FeatureTable":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[0] != "patient_id" or header[-1] != "outcome":
                raise SchemaError(
                    "feature CSV must start with 'patient_id' and end with 'outcome'"
                )
            names = header[1:-1]
            ids, rows, outs = [], [], []
            for lineno, row in enumerate(reader, start=2):
                if len(row) != len(header):
                    raise SchemaError(f"row {lineno} has {len(row)} fields, "
                                      f"expected {len(header)}")
                ids.append(row[0])
                try:
                    rows.append([float(x) for x in row[1:-1]])
                except ValueError as exc:
                    raise SchemaError(f"row {lineno}: {exc}") from None
                outs.append(float(row[-1]) if row[-1] != "" else math.nan)
        values = np.asarray(rows, dtype=float) if rows else np.zeros((0, len(names)))
        return cls(ids, names, values, np.asarray(outs))
