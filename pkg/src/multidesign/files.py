"""JSON problem files and reports (schema version "1").

Complex numbers are ``[re, im]`` pairs; plain numbers are accepted as real.
Matrices are row-major; in a design matrix each row is one vector.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ProblemFormatError
from .spectrum import ProblemData

SCHEMA_VERSION = "1"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("problem file must contain a JSON object")
    version = data.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise ProblemFormatError(f"unsupported schemaVersion {version!r} (expected {SCHEMA_VERSION!r})")
    return data


def _real_vector(value, name: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ProblemFormatError(f"{name} must be a non-empty array of numbers")
    try:
        out = np.array([float(v) for v in value])
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError(f"{name} must contain only numbers") from exc
    if not np.all(np.isfinite(out)):
        raise ProblemFormatError(f"{name} must contain finite numbers")
    return out


def _complex_entry(v, name: str) -> complex:
    if isinstance(v, bool):
        raise ProblemFormatError(f"{name}: booleans are not numbers")
    if isinstance(v, (int, float)):
        return complex(float(v), 0.0)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return complex(float(v[0]), float(v[1]))
    raise ProblemFormatError(f"{name}: entries must be numbers or [re, im] pairs")


def decode_matrix(value, name: str, cols: int | None = None) -> np.ndarray:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ProblemFormatError(f"{name} must be a non-empty array of rows")
    width = len(value[0])
    if width == 0 or any(len(r) != width for r in value):
        raise ProblemFormatError(f"{name} rows must be non-empty and of equal length")
    if cols is not None and width != cols:
        raise ProblemFormatError(f"{name} rows have length {width}, expected {cols}")
    out = np.array([[_complex_entry(v, name) for v in row] for row in value], dtype=complex)
    if not np.all(np.isfinite(out)):
        raise ProblemFormatError(f"{name} must contain finite numbers")
    return out


def encode_matrix(a: np.ndarray) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def parse_problem(data: dict) -> ProblemData:
    """Turn a decoded problem object into :class:`ProblemData`.

    Structural problems raise :class:`ProblemFormatError`; violations of the
    mathematical invariants raise :class:`InvalidProblem` from ``ProblemData``.
    """
    weights = _real_vector(data.get("weights"), "weights")
    dims_raw = data.get("dims")
    if not isinstance(dims_raw, list) or not dims_raw or not all(
        isinstance(d, int) and not isinstance(d, bool) for d in dims_raw
    ):
        raise ProblemFormatError("dims must be a non-empty array of integers")
    dims = tuple(dims_raw)
    has_spectra = "initialSpectra" in data
    has_design = "initialDesign" in data
    if has_spectra == has_design:
        raise ProblemFormatError("exactly one of initialSpectra / initialDesign is required")
    if has_spectra:
        spectra = data["initialSpectra"]
        if not isinstance(spectra, list) or len(spectra) != len(dims):
            raise ProblemFormatError(f"initialSpectra must hold {len(dims)} arrays")
        lams = []
        for j, (lam, d) in enumerate(zip(spectra, dims)):
            v = _real_vector(lam, f"initialSpectra[{j}]")
            if v.size != d:
                raise ProblemFormatError(f"initialSpectra[{j}] has length {v.size}, expected {d}")
            lams.append(v)
        return ProblemData(weights, dims, lams)
    design = data["initialDesign"]
    if not isinstance(design, list) or len(design) != len(dims):
        raise ProblemFormatError(f"initialDesign must hold {len(dims)} matrices")
    families = [decode_matrix(f, f"initialDesign[{j}]", d) for j, (f, d) in enumerate(zip(design, dims))]
    return ProblemData.from_design(weights, families)


def parse_gframe_problem(data: dict) -> tuple[np.ndarray, np.ndarray, int]:
    """Return ``(A, alpha, analysisDim)`` from a decoded G-frame problem object."""
    if "A" not in data:
        raise ProblemFormatError("G-frame problem needs a matrix A")
    a = decode_matrix(data["A"], "A")
    if a.shape[0] != a.shape[1]:
        raise ProblemFormatError("A must be square")
    alpha = _real_vector(data.get("alpha"), "alpha")
    n = data.get("analysisDim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ProblemFormatError("analysisDim must be a positive integer")
    return a, alpha, n


def _plain(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(report: dict[str, Any]) -> str:
    """Serialize a report; floats use the shortest repr that round-trips exactly."""
    return json.dumps(report, indent=2, allow_nan=False, default=_plain) + "\n"


def write_report(report: dict[str, Any], path) -> None:
    text = dumps_report(report)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
