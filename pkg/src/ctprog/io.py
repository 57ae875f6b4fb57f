"""MVOL volume files and the cohort manifest.

An MVOL file is a raw little-endian voxel payload (x fastest, then y,
then z) with a JSON sidecar header ``<name>.mvol.json`` declaring dims,
spacing, origin, and dtype.  Volumes are int16le, masks uint8,
probability maps float32le.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .fusion import ProbMap
from .volume import Mask, MaskRole, Volume

_DTYPES = {
    "int16le": np.dtype("<i2"),
    "uint8": np.dtype("u1"),
    "float32le": np.dtype("<f4"),
}


def _header_path(path: str) -> str:
    return str(path) + ".json"


def write_mvol(path, obj) -> None:
    if isinstance(obj, Mask):
        dtype_name = "uint8"
        payload = obj.voxels.astype(_DTYPES[dtype_name])
        role = obj.role.value
    elif isinstance(obj, ProbMap):
        dtype_name = "float32le"
        payload = obj.voxels.astype(_DTYPES[dtype_name])
        role = None
    elif isinstance(obj, Volume):
        dtype_name = "int16le"
        payload = np.rint(obj.voxels).astype(_DTYPES[dtype_name])
        role = None
    else:
        raise SchemaError(f"cannot write object of type {type(obj).__name__}")

    header = {
        "dims": list(obj.dims),
        "spacing_mm": list(obj.spacing_mm),
        "origin_mm": list(obj.origin_mm),
        "dtype": dtype_name,
    }
    if role is not None:
        header["role"] = role
    with open(_header_path(path), "w") as fh:
        json.dump(header, fh, indent=2)
        fh.write("\n")
    # x-fastest payload: transpose so the x axis varies fastest in C order
    with open(path, "wb") as fh:
        fh.write(np.ascontiguousarray(payload.transpose(2, 1, 0)).tobytes())


def read_mvol(path):
    header_file = _header_path(path)
    if not os.path.exists(header_file):
        raise SchemaError(f"missing MVOL header {header_file}")
    if not os.path.exists(path):
        raise SchemaError(f"missing MVOL payload {path}")
    with open(header_file) as fh:
        header = json.load(fh)
    try:
        dims = tuple(int(d) for d in header["dims"])
        spacing = tuple(float(s) for s in header["spacing_mm"])
        origin = tuple(float(o) for o in header["origin_mm"])
        dtype_name = header["dtype"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed MVOL header {header_file}: {exc}") from None
    if dtype_name not in _DTYPES:
        raise SchemaError(f"unsupported MVOL dtype {dtype_name!r}")
    dtype = _DTYPES[dtype_name]

    expected = int(np.prod(dims)) * dtype.itemsize
    raw = np.fromfile(path, dtype=dtype)
    if raw.size * dtype.itemsize != expected:
        raise SchemaError(
            f"{path}: payload is {raw.size * dtype.itemsize} bytes, "
            f"header implies {expected}"
        )
    voxels = raw.reshape(dims[::-1]).transpose(2, 1, 0)

    if dtype_name == "uint8":
        role = MaskRole(header.get("role", "other"))
        return Mask(voxels, spacing, origin, role)
    if dtype_name == "float32le":
        return ProbMap(voxels.astype(np.float64), spacing, origin)
    return Volume(voxels.astype(np.float64), spacing, origin)


MANIFEST_COLUMNS = (
    "patient_id",
    "volume",
    "lung_left",
    "lung_right",
    "disease",
    "heart",
    "age",
    "gender",
    "outcome",
)


@dataclass(frozen=True)
class ManifestRow:
    patient_id: str
    volume: str
    lung_left: str
    lung_right: str
    disease: str
    heart: str
    age: float
    gender: int
    outcome: int | None  # None = unlabeled

    def mask_paths(self) -> dict:
        return {
            "lung_left": self.lung_left,
            "lung_right": self.lung_right,
            "disease": self.disease,
            "heart": self.heart,
        }


def load_manifest(path) -> list[ManifestRow]:
    base = os.path.dirname(os.path.abspath(path))
    rows: list[ManifestRow] = []
    seen = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != MANIFEST_COLUMNS:
            raise SchemaError(
                f"manifest columns must be {','.join(MANIFEST_COLUMNS)}, "
                f"got {reader.fieldnames}"
            )
        for lineno, rec in enumerate(reader, start=2):
            pid = rec["patient_id"]
            if pid in seen:
                raise SchemaError(f"duplicate patient_id {pid!r} (line {lineno})")
            seen.add(pid)
            try:
                outcome = int(rec["outcome"]) if rec["outcome"] != "" else None
                if outcome is not None and outcome not in (0, 1, 2):
                    raise ValueError(f"outcome must be 0, 1, or 2, got {outcome}")
                row = ManifestRow(
                    patient_id=pid,
                    volume=os.path.join(base, rec["volume"]),
                    lung_left=os.path.join(base, rec["lung_left"]),
                    lung_right=os.path.join(base, rec["lung_right"]),
                    disease=os.path.join(base, rec["disease"]),
                    heart=os.path.join(base, rec["heart"]),
                    age=float(rec["age"]),
                    gender=int(rec["gender"]),
                    outcome=outcome,
                )
            except (KeyError, ValueError) as exc:
                raise SchemaError(f"manifest line {lineno}: {exc}") from None
            rows.append(row)
    return rows


def write_manifest(path, rows, relative_to=None) -> None:
    base = relative_to or os.path.dirname(os.path.abspath(path))

    def rel(p):
        return os.path.relpath(p, base)

    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.patient_id,
                    rel(r.volume),
                    rel(r.lung_left),
                    rel(r.lung_right),
                    rel(r.disease),
                    rel(r.heart),
                    repr(float(r.age)),
                    r.gender,
                    "" if r.outcome is None else r.outcome,
                ]
            )
