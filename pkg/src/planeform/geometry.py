"""Points, the middle operation, rulers, rational lines and parallelograms.

Points carry coordinates under one ambient chart. The charts that
"preserve the geometry" are the maps ``x -> a + x`` and ``x -> a - x``;
``Chart`` models exactly that family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import BadIndices, DegenerateLine, MissingNegation, TooShort
from .linalg import Mat2, Vec2
from .scalars import FLOAT_TOL


@dataclass(frozen=True)
class Point:
    coords: Vec2

    @classmethod
    def at(cls, x1, x2) -> "Point":
        return cls(Vec2(x1, x2))

    def close(self, other: "Point", tol: float = FLOAT_TOL) -> bool:
        return self.coords.close(other.coords, tol)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Chart:
    """The map ``x -> offset + sign * x``."""

    offset: Vec2
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("chart sign must be +1 or -1")

    def __call__(self, p: Point) -> Point:
        c = p.coords if self.sign == 1 else -p.coords
        return Point(self.offset + c)


@dataclass(frozen=True)
class GeoVector:
    """Class of point pairs under the parallelogram relation, held by its coordinate difference."""

    rep: Vec2


@dataclass(frozen=True)
class Ruler:
    points: tuple

    def __post_init__(self):
        if len(self.points) < 3:
            raise TooShort("a ruler needs at least 3 points")

    @property
    def n(self) -> int:
        return len(self.points) - 1

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]


def middle(a: Point, b: Point) -> Point:
    return Point((a.coords + b.coords) / 2)


def point_reflection(a: Point, b: Point) -> Chart:
    """``x -> (a + b) - x``: swaps ``a`` and ``b``; its only fixed point is ``middle(a, b)``."""
    return Chart(a.coords + b.coords, -1)


def fixed_points(chart: Chart) -> list:
    """Fixed points of a chart map; the empty list means none, ``None`` means every point."""
    if chart.sign == 1:
        return None if chart.offset.is_zero(0.0) else []
    return [Point(chart.offset / 2)]


def ruler_between(a: Point, b: Point, k: int, l: int, n: int) -> Ruler:
    """The unique n-ruler ``c`` with ``c[k] == a`` and ``c[l] == b``.

    ``a == b`` yields the constant ruler.
    """
    if not (n >= 2 and n >= k > l >= 0):
        raise BadIndices(f"need n >= k > l >= 0 and n >= 2, got n={n}, k={k}, l={l}")
    diff = a.coords - b.coords
    step = diff / (k - l) if a.coords.kind == "float" else diff * Fraction(1, k - l)
    return Ruler(tuple(Point(b.coords + step * (i - l)) for i in range(n + 1)))


def is_ruler(seq: Sequence[Point], tol: float = FLOAT_TOL) -> bool:
    if len(seq) < 3:
        raise TooShort("a ruler needs at least 3 points")
    return all(seq[i].close(middle(seq[i - 1], seq[i + 1]), tol) for i in range(1, len(seq) - 1))


def rational_line(a: Point, b: Point, num_bound: int, den_bound: int) -> set:
    """Points ``b + (p/d) * (a - b)`` for ``|p| <= num_bound``, ``1 <= d <= den_bound``.

    Only the rational points are enumerated; the closure to a full straight
    line is never formed. Each point is reachable by a single ruler, see
    ``rational_point_via_rulers``.
    """
    if num_bound < 1 or den_bound < 1:
        raise ValueError("bounds must be >= 1")
    if a.coords.close(b.coords, 0.0):
        raise DegenerateLine("a rational line needs two distinct points")
    qs = {Fraction(p, d) for p in range(-num_bound, num_bound + 1) for d in range(1, den_bound + 1)}
    diff = a.coords - b.coords
    exact = a.coords.kind == "rational"
    return {Point(b.coords + diff * (q if exact else float(q))) for q in qs}


def rational_point_via_rulers(a: Point, b: Point, q) -> Point:
    """Reach ``b + q * (a - b)`` with one ruler construction.

    For ``q = p/d`` take the ruler with ``c[l] = b`` and ``c[l + d] = a``
    where ``l = max(-p, 0)``; the requested point is ``c[l + p]``.
    """
    q = Fraction(q)
    p, d = q.numerator, q.denominator
    l = max(-p, 0)
    k = l + d
    ruler = ruler_between(a, b, k, l, max(k, l + p, 2))
    return ruler[l + p]


def is_parallelogram(a: Point, b: Point, c: Point, d: Point, tol: float = FLOAT_TOL) -> bool:
    """Whether ``(a, b, c, d)`` is a parallelogram in that vertex order.

    Both characterizations (shared diagonal middle, equal opposite sides)
    are evaluated. For exact points disagreement is a bug and raises; for
    floats the side test decides.
    """
    by_middle = middle(a, c).close(middle(b, d), tol / 2)
    by_sides = (a.coords - b.coords).close(d.coords - c.coords, tol)
    if a.coords.kind == "rational" and by_middle != by_sides:
        raise AssertionError("parallelogram characterizations disagree")
    return by_sides


def vector_between(a: Point, b: Point) -> GeoVector:
    return GeoVector(b.coords - a.coords)


def add(v: GeoVector, w: GeoVector) -> GeoVector:
    return GeoVector(v.rep + w.rep)


def scale(lam, v: GeoVector) -> GeoVector:
    return GeoVector(v.rep * lam)


def translate(p: Point, v: GeoVector) -> Point:
    return Point(p.coords + v.rep)


@dataclass(frozen=True)
class AxiomOneReport:
    ok: bool
    checks: int
    failure: str | None = None
    counterexample: tuple | None = None


def check_axiom1_maps(samples: Iterable[Point], anchor: Vec2, group) -> AxiomOneReport:
    """Check that ``x -> anchor + x`` and ``x -> anchor - x`` preserve middles and length classes.

    ``group`` is a complete ``GroupClosure`` used as the same-length oracle;
    it must contain ``-I``.
    """
    from .groups import same_length

    pts = list(samples)
    kind = anchor.kind
    if not any(m.close(-Mat2.identity(m.kind), 0.0) for m in group.members):
        raise MissingNegation("x -> a - x preserves lengths only if -I is an isometry")

    checks = 0
    for sign in (1, -1):
        f = Chart(anchor, sign)
        label = f"x -> anchor {'+' if sign == 1 else '-'} x"
        for x, y in product(pts, repeat=2):
            checks += 1
            if not f(middle(x, y)).close(middle(f(x), f(y)), 0.0 if kind == "rational" else FLOAT_TOL):
                return AxiomOneReport(False, checks, f"{label}: middle not preserved", (x, y))
        for x, y, z in product(pts, repeat=3):
            checks += 1
            before = z.close(middle(x, y))
            after = f(z).close(middle(f(x), f(y)))
            if before != after:
                return AxiomOneReport(False, checks, f"{label}: middle relation changed", (x, y, z))
        pairs = list(product(pts, repeat=2))
        for (x, y), (z, w) in product(pairs, repeat=2):
            checks += 1
            u, v = vector_between(x, y).rep, vector_between(z, w).rep
            fu, fv = vector_between(f(x), f(y)).rep, vector_between(f(z), f(w)).rep
            if same_length(u, v, group) != same_length(fu, fv, group):
                return AxiomOneReport(False, checks, f"{label}: length class changed", ((x, y), (z, w)))
    return AxiomOneReport(True, checks)
