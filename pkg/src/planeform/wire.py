"""JSON wire formats: group specs, certificates, point files, Gram files.

Matrices are row-major nested arrays, rationals travel as ``"p/q"`` strings
and floats as JSON numbers.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import scalars
from .errors import InputError
from .groups import DEFAULT_CLOSURE_LIMIT, GroupSpec
from .linalg import Mat2, Vec2


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(obj) -> str:
    raw = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(raw.encode()).hexdigest()


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(str(path), f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(obj, dict):
        raise InputError(str(path), "top level must be a JSON object")
    return obj


def dump_scalar(x):
    return scalars.dump(x)


def dump_matrix(m: Mat2) -> list:
    return [[scalars.dump(v) for v in row] for row in m.as_rows()]


def dump_vec(v) -> list:
    return [scalars.dump(x) for x in v]


def parse_scalar(token, kind, field):
    try:
        return scalars.parse(token, kind)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(field, str(exc)) from None


def parse_matrix(obj, kind, field) -> Mat2:
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise InputError(field, f"expected a 2x2 array [[a, b], [c, d]], got {json.dumps(obj)}")
    vals = [parse_scalar(x, kind, f"{field}[{i}][{j}]") for i, row in enumerate(obj) for j, x in enumerate(row)]
    return Mat2(*vals)


def parse_vec(obj, kind, field) -> Vec2:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise InputError(field, f"expected a 2-element array, got {json.dumps(obj)}")
    return Vec2(*(parse_scalar(x, kind, f"{field}[{i}]") for i, x in enumerate(obj)))


def guess_kind(values) -> str:
    """``float`` if any JSON float literal appears, else ``rational``."""
    def walk(x):
        if isinstance(x, list):
            return any(walk(y) for y in x)
        return isinstance(x, float)

    return scalars.FLOAT if walk(values) else scalars.RATIONAL


def parse_group_spec(obj: dict, closure_limit: int | None = None) -> GroupSpec:
    kind = obj.get("scalar", scalars.RATIONAL)
    if kind not in (scalars.RATIONAL, scalars.FLOAT):
        raise InputError("scalar", f"must be 'rational' or 'float', got {kind!r}")
    gens, elems = obj.get("generators", []), obj.get("elements", [])
    for name, seq in (("generators", gens), ("elements", elems)):
        if not isinstance(seq, list):
            raise InputError(name, "must be an array of 2x2 matrices")
    if not gens and not elems:
        raise InputError("generators", "at least one of generators/elements must be nonempty")
    limit = obj.get("closure_limit", DEFAULT_CLOSURE_LIMIT)
    if closure_limit is not None:
        limit = closure_limit
    if not isinstance(limit, int) or isinstance(limit, bool) or limit < 1:
        raise InputError("closure_limit", f"must be a positive integer, got {limit!r}")
    try:
        return GroupSpec(
            generators=tuple(parse_matrix(m, kind, f"generators[{i}]") for i, m in enumerate(gens)),
            elements=tuple(parse_matrix(m, kind, f"elements[{i}]") for i, m in enumerate(elems)),
            closure_limit=limit,
            scalar=kind,
        )
    except InputError:
        raise
    except ValueError as exc:
        raise InputError("generators", str(exc)) from None


def dump_group_spec(spec: GroupSpec) -> dict:
    out = {"scalar": spec.scalar, "closure_limit": spec.closure_limit}
    out["generators"] = [dump_matrix(m) for m in spec.generators]
    out["elements"] = [dump_matrix(m) for m in spec.elements]
    return out


def parse_gram(obj, kind, field="gram") -> Mat2:
    m = parse_matrix(obj, kind, field)
    if not m.is_symmetric():
        raise InputError(field, "Gram matrix must be symmetric")
    return m


def parse_gram_n(obj, kind, field="gram") -> tuple:
    if not (isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj)):
        raise InputError(field, "expected a square array of arrays")
    n = len(obj)
    if any(len(r) != n for r in obj):
        raise InputError(field, f"expected {n} entries in every row")
    rows = tuple(tuple(parse_scalar(x, kind, f"{field}[{i}][{j}]") for j, x in enumerate(r)) for i, r in enumerate(obj))
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
        raise InputError(field, "Gram matrix must be symmetric")
    return rows
