"""2x2 matrix and vector algebra over either scalar backend.

Everything here is immutable. ``Mat2`` entries are row-major
``(a11, a12, a21, a22)``; a matrix or vector is homogeneous in scalar kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .errors import NotTraceless
from .scalars import FLOAT_TOL, Scalar


@dataclass(frozen=True)
class Vec2:
    x1: Scalar
    x2: Scalar

    def __post_init__(self):
        x1, x2 = scalars.coerce(self.x1), scalars.coerce(self.x2)
        scalars.common_kind((x1, x2))
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @classmethod
    def of(cls, seq) -> "Vec2":
        a, b = seq
        return cls(a, b)

    @property
    def kind(self) -> str:
        return scalars.kind_of(self.x1)

    def __iter__(self):
        yield self.x1
        yield self.x2

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x1, -self.x2)

    def __mul__(self, s) -> "Vec2":
        return Vec2(self.x1 * s, self.x2 * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Vec2":
        return Vec2(self.x1 / s, self.x2 / s)

    def is_zero(self, tol: float = FLOAT_TOL) -> bool:
        return scalars.is_zero(self.x1, tol) and scalars.is_zero(self.x2, tol)

    def close(self, other: "Vec2", tol: float = FLOAT_TOL) -> bool:
        return (self - other).is_zero(tol)

    def to_kind(self, kind: str) -> "Vec2":
        return Vec2(scalars.to_kind(self.x1, kind), scalars.to_kind(self.x2, kind))


@dataclass(frozen=True, order=False)
class Mat2:
    a11: Scalar
    a12: Scalar
    a21: Scalar
    a22: Scalar

    def __post_init__(self):
        vals = [scalars.coerce(v) for v in (self.a11, self.a12, self.a21, self.a22)]
        scalars.common_kind(vals)
        for name, v in zip(("a11", "a12", "a21", "a22"), vals):
            object.__setattr__(self, name, v)

    @classmethod
    def rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, kind: str = scalars.RATIONAL) -> "Mat2":
        one, zero = scalars.to_kind(1, kind), scalars.to_kind(0, kind)
        return cls(one, zero, zero, one)

    @classmethod
    def scalar(cls, s) -> "Mat2":
        s = scalars.coerce(s)
        return cls(s, s * 0, s * 0, s)

    @property
    def kind(self) -> str:
        return scalars.kind_of(self.a11)

    def entries(self) -> tuple:
        return (self.a11, self.a12, self.a21, self.a22)

    def as_rows(self) -> list:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def __mul__(self, s) -> "Mat2":
        return Mat2(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Mat2":
        return Mat2(self.a11 / s, self.a12 / s, self.a21 / s, self.a22 / s)

    def __matmul__(self, o):
        if isinstance(o, Vec2):
            return Vec2(self.a11 * o.x1 + self.a12 * o.x2, self.a21 * o.x1 + self.a22 * o.x2)
        return Mat2(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )

    @property
    def T(self) -> "Mat2":
        return Mat2(self.a11, self.a21, self.a12, self.a22)

    def trace(self) -> Scalar:
        return self.a11 + self.a22

    def det(self) -> Scalar:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inverse(self) -> "Mat2":
        d = self.det()
        if scalars.is_zero(d, 0.0):
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def max_abs(self) -> Scalar:
        return max(abs(v) for v in self.entries())

    def is_zero(self, tol: float = FLOAT_TOL) -> bool:
        return all(scalars.is_zero(v, tol) for v in self.entries())

    def close(self, other: "Mat2", tol: float = FLOAT_TOL) -> bool:
        return (self - other).is_zero(tol)

    def is_scalar(self, tol: float = FLOAT_TOL) -> bool:
        return (
            scalars.is_zero(self.a12, tol)
            and scalars.is_zero(self.a21, tol)
            and scalars.is_zero(self.a11 - self.a22, tol)
        )

    def is_symmetric(self) -> bool:
        return self.a12 == self.a21

    def to_kind(self, kind: str) -> "Mat2":
        return Mat2(*(scalars.to_kind(v, kind) for v in self.entries()))

    def sort_key(self) -> tuple:
        """Deterministic ordering key (the serialized entries, numerically)."""
        return tuple(Fraction(v) for v in self.entries())


# unit antisymmetric matrix: u1*v2 - u2*v1 == u^T @ E @ v
E = Mat2(0, 1, -1, 0)


@dataclass(frozen=True)
class WedgeForm:
    """Antisymmetric bilinear form ``c * (u1*v2 - u2*v1)``."""

    c: Scalar = Fraction(1)

    def __post_init__(self):
        c = scalars.coerce(self.c)
        if c == 0:
            raise ValueError("wedge normalization must be nonzero")
        object.__setattr__(self, "c", c)

    def __call__(self, u: Vec2, v: Vec2) -> Scalar:
        return wedge(self, u, v)


@dataclass(frozen=True)
class TracelessDecomposition:
    tau: Scalar
    j: Mat2
    j_square: Scalar

    @property
    def nilpotent(self) -> bool:
        """Nonzero traceless part squaring to zero (exact test; floats use FLOAT_TOL)."""
        return scalars.is_zero(self.j_square) and not self.j.is_zero()


def char_poly(m: Mat2) -> tuple[Scalar, Scalar]:
    """Coefficients ``(trace, det)`` of ``x**2 - trace*x + det``."""
    return m.trace(), m.det()


def cayley_hamilton_residual(m: Mat2) -> Mat2:
    tr, det = char_poly(m)
    return m @ m - m * tr + Mat2.scalar(det)


def wedge(w: WedgeForm, u: Vec2, v: Vec2) -> Scalar:
    c = scalars.to_kind(w.c, scalars.common_kind((u.x1, v.x1)))
    return c * (u.x1 * v.x2 - u.x2 * v.x1)


def traceless_decompose(m: Mat2) -> TracelessDecomposition:
    tau = m.trace() / 2
    j = m - Mat2.scalar(tau)
    j_square = tau * tau - m.det()
    return TracelessDecomposition(tau=tau, j=j, j_square=j_square)


def is_traceless(m: Mat2, tol: float = FLOAT_TOL) -> bool:
    return scalars.is_zero(m.trace(), tol)


def traceless_inner(a: Mat2, b: Mat2, tol: float = FLOAT_TOL) -> Scalar:
    """Half the trace of ``a @ b``; both arguments must be traceless.

    On traceless operators this has signature (+, +, -): the basis
    ``diag(1, -1)``, ``[[0, 1], [1, 0]]``, ``[[0, 1], [-1, 0]]`` is orthogonal
    with squares 1, 1, -1.
    """
    for m in (a, b):
        if not is_traceless(m, tol):
            raise NotTraceless(f"trace {m.trace()!r} != 0 for {m.as_rows()}")
    return (a @ b).trace() / 2


def real_eigenvalues(m: Mat2) -> tuple:
    """Real roots of the characteristic polynomial, via the quadratic formula.

    Exact matrices return exact roots when the discriminant is a rational
    square and float roots otherwise; an empty tuple means complex roots.
    """
    tr, det = char_poly(m)
    disc = tr * tr - 4 * det
    if disc < 0:
        return ()
    if m.kind == scalars.RATIONAL:
        try:
            r = scalars.exact_sqrt(disc)
        except ValueError:
            r = float(disc) ** 0.5
            tr = float(tr)
    else:
        r = disc ** 0.5
    return ((tr - r) / 2, (tr + r) / 2)
