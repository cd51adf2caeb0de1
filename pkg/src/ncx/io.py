"""JSON interchange for complexes, short exact sequences and algebras.

One file holds one object, discriminated by ``"kind"``: ``"complex"``,
``"ses"`` or ``"algebra"``.  Scalars are strings (``"3"``, ``"2/5"``);
cyclotomic scalars are arrays of such strings in the power basis.  Degree
keys are decimal strings and may be negative.  Output is UTF-8 with sorted
keys, so serializing a parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .coeff import Field, field_spec, make_field
from .errors import FieldSpecError, SchemaError, ShapeError
from .homalg import ShortExactSequence
from .ncomplex import GradedMap, NComplex
from .qdga import QDGA, GradedAlgebra


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# scalars and matrices


def encode_matrix(F: Field, M: np.ndarray) -> list:
    return [[F.format(x) for x in row] for row in M]


def decode_matrix(F: Field, data: Any, shape: tuple) -> np.ndarray:
    rows, cols = shape
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError(f"expected {rows} rows, got {data!r:.60}")
    M = F.zeros(rows, cols)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"row {i} should have {cols} entries")
        for j, x in enumerate(row):
            try:
                M[i, j] = F.parse(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad scalar {x!r}: {exc}") from exc
    return M


def decode_vector(F: Field, data: Any, length: int) -> np.ndarray:
    if not isinstance(data, list) or len(data) != length:
        raise SchemaError(f"expected a vector of length {length}")
    return decode_matrix(F, [data], (1, length))[0] if length else F.zeros(0, 1)[:, 0]


def _degree_dict(data: Any, what: str) -> dict:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise SchemaError(f"{what} must be an object keyed by degree")
    try:
        return {int(k): v for k, v in data.items()}
    except ValueError:
        raise SchemaError(f"{what} keys must be integers") from None


def field_from_json(obj: dict) -> Field:
    if "field" not in obj or "N" not in obj:
        raise SchemaError("missing 'field' or 'N'")
    spec = dict(obj["field"])
    spec["N"] = obj["N"]
    try:
        return make_field(spec)
    except FieldSpecError as exc:
        raise SchemaError(str(exc)) from exc


def _header(F: Field, kind: str) -> dict:
    return {"kind": kind, "N": F.N, "field": field_spec(F)}


# ---------------------------------------------------------------------------
# complexes


def complex_body(C: NComplex) -> dict:
    F = C.F
    dims = {str(n): C.dim(n) for n in sorted(C.dims)}
    d = {str(n): encode_matrix(F, C.diff(n)) for n in sorted(C.dims) if C.dim(n + 1)}
    return {"dims": dims, "d": d}


def complex_to_json(C: NComplex) -> dict:
    out = _header(C.F, "complex")
    out.update(complex_body(C))
    return out


def complex_from_body(F: Field, body: dict) -> NComplex:
    if not isinstance(body, dict):
        raise SchemaError("complex must be an object")
    dims = _degree_dict(body.get("dims"), "dims")
    for n, v in dims.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise SchemaError(f"dimension at degree {n} must be a nonnegative integer")
    dmap = {}
    for n, data in _degree_dict(body.get("d"), "d").items():
        dmap[n] = decode_matrix(F, data, (dims.get(n + 1, 0), dims.get(n, 0)))
    try:
        return NComplex(F, dims, dmap)
    except ShapeError as exc:
        raise SchemaError(str(exc)) from exc


def complex_from_json(obj: dict) -> NComplex:
    _expect_kind(obj, "complex")
    return complex_from_body(field_from_json(obj), obj)


def _expect_kind(obj: Any, kind: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    got = obj.get("kind", "complex" if kind == "complex" else None)
    if got != kind:
        raise SchemaError(f"expected kind {kind!r}, got {got!r}")


# ---------------------------------------------------------------------------
# graded maps and short exact sequences


def map_to_json(F: Field, f: GradedMap) -> dict:
    return {str(n): encode_matrix(F, f.matrix(n)) for n in sorted(f.source_dims)
            if f.target_dims.get(n + f.shift, 0)}


def map_from_json(F: Field, data: Any, src: NComplex, tgt: NComplex, shift: int = 0) -> GradedMap:
    mats = {}
    for n, m in _degree_dict(data, "map").items():
        mats[n] = decode_matrix(F, m, (tgt.dim(n + shift), src.dim(n)))
    return GradedMap(F, src.dims, tgt.dims, shift, mats)


def ses_to_json(s: ShortExactSequence) -> dict:
    F = s.F
    out = _header(F, "ses")
    out.update({
        "C1": complex_body(s.C1),
        "C2": complex_body(s.C2),
        "C3": complex_body(s.C3),
        "alpha": map_to_json(F, s.alpha),
        "beta": map_to_json(F, s.beta),
    })
    return out


def ses_from_json(obj: dict) -> ShortExactSequence:
    _expect_kind(obj, "ses")
    F = field_from_json(obj)
    try:
        C1, C2, C3 = (complex_from_body(F, obj[k]) for k in ("C1", "C2", "C3"))
        a = map_from_json(F, obj.get("alpha"), C1, C2)
        b = map_from_json(F, obj.get("beta"), C2, C3)
    except KeyError as exc:
        raise SchemaError(f"missing {exc}") from None
    return ShortExactSequence(C1, C2, C3, a, b)


# ---------------------------------------------------------------------------
# algebras


def algebra_to_json(Q: QDGA) -> dict:
    F, A = Q.F, Q.algebra
    out = _header(F, "algebra")
    out["N"] = Q.N
    out.update({
        "window": A.window,
        "dims": {str(n): A.dims[n] for n in range(A.window + 1)},
        "unit": [F.format(x) for x in A.unit],
        "mu": {f"{i},{j}": encode_matrix(F, A.product(i, j))
               for i in range(A.window + 1) for j in range(A.window + 1 - i)},
        "d": {str(n): encode_matrix(F, Q.diff(n)) for n in range(A.window)},
        "labels": {str(n): list(A.labels[n]) for n in range(A.window + 1)},
    })
    return out


def algebra_from_json(obj: dict) -> QDGA:
    _expect_kind(obj, "algebra")
    F = field_from_json(obj)
    try:
        D = int(obj["window"])
        dims = {n: int(v) for n, v in _degree_dict(obj.get("dims"), "dims").items()}
        full = {n: dims.get(n, 0) for n in range(D + 1)}
        unit = decode_vector(F, obj.get("unit", []), full[0])
        mu = {}
        for key, data in (obj.get("mu") or {}).items():
            i, j = (int(x) for x in key.split(","))
            if i + j > D:
                continue
            mu[(i, j)] = decode_matrix(F, data, (full[i + j], full[i] * full[j]))
        d = {}
        for n, data in _degree_dict(obj.get("d"), "d").items():
            if n < D:
                d[n] = decode_matrix(F, data, (full[n + 1], full[n]))
        labels = None
        if "labels" in obj:
            labels = {int(k): list(v) for k, v in obj["labels"].items()}
        A = GradedAlgebra(F, D, full, unit, mu, labels)
        return QDGA(A, d, int(obj["N"]))
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed algebra: {exc}") from exc


def load_any(path):
    obj = load(path)
    kind = obj.get("kind", "complex") if isinstance(obj, dict) else None
    if kind == "complex":
        return kind, complex_from_json(obj)
    if kind == "ses":
        return kind, ses_from_json(obj)
    if kind == "algebra":
        return kind, algebra_from_json(obj)
    raise SchemaError(f"unknown kind {kind!r}")
