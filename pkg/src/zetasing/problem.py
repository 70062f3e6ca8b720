"""Problem files: JSON input describing the spectrum and the boundary matrices.

Layout::

    {"q0": 1, "nus": [0.7],            # or "lambdas": [...], not both
     "A": [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]],   # [re, im] pairs
     "B": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
     "xi_cutoff": 3.5, "ell_max": 32, "merge_tol": 1e-12,
     "dimension_n": 2, "label": "cone", "boundary_zeta_residue": 0.0}

Matrix entries may also be plain real numbers.  Column ``i`` belongs to the
``i``-th listed eigenvalue, the ``q0`` block first.  The spectrum is sorted on
load and the matrix columns are permuted along with it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, SchemaError, StructuralError
from .grading import DEFAULT_MERGE_TOL
from .lagrangian import LagrangianPair
from .spectral_data import EigenvalueSpec

KNOWN_KEYS = {
    "q0", "lambdas", "nus", "A", "B", "xi_cutoff", "ell_max", "merge_tol",
    "dimension_n", "label", "boundary_zeta_residue",
}


@dataclass
class Problem:
    spec: EigenvalueSpec
    pair: LagrangianPair
    xi_cutoff: float | None = None
    ell_max: int = 32
    merge_tol: float = DEFAULT_MERGE_TOL
    label: str | None = None
    boundary_zeta_residue: float | None = None

    def echo(self) -> dict:
        """Canonical (sorted) form of the input, as written into reports."""
        out = {
            "label": self.label,
            "q0": self.spec.q0,
            "nus": list(self.spec.nus),
            "lambdas": list(self.spec.lambdas),
            "dimension_n": self.spec.dimension_n,
            "A": matrix_to_json(self.pair.A),
            "B": matrix_to_json(self.pair.B),
        }
        if self.boundary_zeta_residue is not None:
            out["boundary_zeta_residue"] = self.boundary_zeta_residue
        return out


def matrix_to_json(M) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, complex)]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(value):
        raise SchemaError(path, "number must be finite")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _entry(value, path: str) -> complex:
    if isinstance(value, list):
        if len(value) != 2:
            raise SchemaError(path, f"complex entry must be [re, im], got {len(value)} items")
        return complex(_number(value[0], path + "[0]"), _number(value[1], path + "[1]"))
    return complex(_number(value, path))


def _matrix(value, name: str, q: int) -> np.ndarray:
    if not isinstance(value, list):
        raise SchemaError(name, "expected a list of rows")
    if len(value) != q:
        raise SchemaError(name, f"expected {q} rows, got {len(value)}")
    rows = []
    for i, row in enumerate(value):
        path = f"{name}[{i}]"
        if not isinstance(row, list):
            raise SchemaError(path, "expected a row list")
        if len(row) != q:
            raise SchemaError(path, f"expected {q} entries, got {len(row)}")
        rows.append([_entry(v, f"{path}[{j}]") for j, v in enumerate(row)])
    return np.array(rows, dtype=complex)


def parse_problem(doc) -> Problem:
    if not isinstance(doc, dict):
        raise SchemaError("", "problem must be a JSON object")
    unknown = sorted(set(doc) - KNOWN_KEYS)
    if unknown:
        raise SchemaError(unknown[0], "unknown key")
    q0 = _integer(doc.get("q0", 0), "q0")
    if q0 < 0:
        raise SchemaError("q0", "must be >= 0")
    has_l, has_n = "lambdas" in doc, "nus" in doc
    if has_l == has_n:
        raise SchemaError("lambdas", "give exactly one of 'lambdas' or 'nus'")
    key = "lambdas" if has_l else "nus"
    raw = doc[key]
    if not isinstance(raw, list):
        raise SchemaError(key, "expected an array of numbers")
    values = [_number(v, f"{key}[{i}]") for i, v in enumerate(raw)]
    dim = doc.get("dimension_n")
    if dim is not None:
        dim = _integer(dim, "dimension_n")
    try:
        if has_l:
            spec = EigenvalueSpec.from_lambdas(values, q0, dim)
        else:
            spec = EigenvalueSpec.from_nus(values, q0, dim)
    except DomainError as exc:
        raise SchemaError(key, str(exc)) from None
    q = q0 + len(values)
    A = _matrix(doc.get("A"), "A", q)
    B = _matrix(doc.get("B"), "B", q)
    # columns of folded -1/4 entries already lead; permute the rest to sorted order
    lead = spec.q0
    perm = list(range(lead)) + [lead + i for i in spec.order]
    try:
        pair = LagrangianPair(A[:, perm], B[:, perm], spec.q0)
    except StructuralError as exc:
        raise SchemaError("A", str(exc)) from None
    cutoff = doc.get("xi_cutoff")
    if cutoff is not None:
        cutoff = _number(cutoff, "xi_cutoff")
        if cutoff < 0:
            raise SchemaError("xi_cutoff", "must be >= 0")
    ell_max = _integer(doc.get("ell_max", 32), "ell_max")
    if ell_max < 1:
        raise SchemaError("ell_max", "must be >= 1")
    merge_tol = _number(doc.get("merge_tol", DEFAULT_MERGE_TOL), "merge_tol")
    if merge_tol <= 0:
        raise SchemaError("merge_tol", "must be > 0")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("label", "expected a string")
    res = doc.get("boundary_zeta_residue")
    if res is not None:
        res = _number(res, "boundary_zeta_residue")
    return Problem(spec, pair, cutoff, ell_max, merge_tol, label, res)


def load_problem(path) -> Problem:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None
    return parse_problem(doc)


def problem_document(spec: EigenvalueSpec, pair: LagrangianPair, xi_cutoff: float,
                     label: str | None = None, ell_max: int = 32) -> dict:
    """Build a problem-file dictionary (used by tests and the examples command)."""
    doc = {
        "q0": spec.q0,
        "nus": list(spec.nus),
        "A": matrix_to_json(pair.A),
        "B": matrix_to_json(pair.B),
        "xi_cutoff": xi_cutoff,
        "ell_max": ell_max,
    }
    if label is not None:
        doc["label"] = label
    return doc
