"""Scalar backends: exact rationals (``Fraction``) and 64-bit floats.

Integers are promoted to ``Fraction``. A value built from a mix of
``Fraction`` and ``float`` entries is rejected with ``ScalarKindError``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import ScalarKindError, IrrationalNormalizer

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"

# absolute tolerance on entries for float comparisons
FLOAT_TOL = 1e-12


def kind_of(x) -> str:
    t = type(x)
    if t is Fraction:
        return RATIONAL
    if t is float:
        return FLOAT
    if isinstance(x, bool):
        raise ScalarKindError(f"booleans are not scalars: {x!r}")
    if isinstance(x, float):
        return FLOAT
    if isinstance(x, Rational):
        return RATIONAL
    raise ScalarKindError(f"unsupported scalar type {type(x).__name__}")


def coerce(x) -> Scalar:
    """Normalize a single value: ints become Fractions, floats stay floats."""
    if type(x) is Fraction or type(x) is float:
        return x
    if kind_of(x) == FLOAT:
        return x
    return x if isinstance(x, Fraction) else Fraction(x)


def common_kind(values: Iterable) -> str:
    kinds = {kind_of(v) for v in values}
    if len(kinds) > 1:
        raise ScalarKindError("cannot mix exact rationals and floats")
    return kinds.pop() if kinds else RATIONAL


def to_kind(x, kind: str) -> Scalar:
    """Explicit conversion between backends (never applied implicitly)."""
    if kind == FLOAT:
        return float(x)
    if isinstance(x, float):
        return Fraction(x)
    return coerce(x)


def is_zero(x: Scalar, tol: float = FLOAT_TOL) -> bool:
    if isinstance(x, float):
        return abs(x) <= tol
    return x == 0


def close(x: Scalar, y: Scalar, tol: float = FLOAT_TOL) -> bool:
    return is_zero(x - y, tol)


def exact_sqrt(x: Fraction) -> Fraction:
    """Square root of a non-negative rational that is a perfect square."""
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise IrrationalNormalizer(f"{x} is not the square of a rational")
    return Fraction(rp, rq)


def sqrt(x: Scalar) -> Scalar:
    if isinstance(x, float):
        return math.sqrt(x)
    return exact_sqrt(x)


def parse(token, kind: str | None = None) -> Scalar:
    """Read one wire scalar: ``"p/q"`` strings, ints, or decimal floats."""
    if isinstance(token, bool):
        raise ValueError(f"not a scalar: {token!r}")
    if isinstance(token, str):
        token = token.strip()
        if kind == FLOAT:
            return float(Fraction(token)) if "/" in token else float(token)
        try:
            return Fraction(token)
        except ValueError:
            raise ValueError(f"not a scalar: {token!r}") from None
    if isinstance(token, float) and kind == RATIONAL:
        raise ValueError(f"float literal {token!r} where an exact rational is required")
    if isinstance(token, (int, float)):
        return to_kind(token, kind) if kind else coerce(token)
    raise ValueError(f"not a scalar: {token!r}")


def dump(x: Scalar):
    """Wire form: rationals as ``"p/q"`` strings, floats as JSON numbers."""
    if isinstance(x, float):
        return x
    x = coerce(x)
    return f"{x.numerator}/{x.denominator}"
