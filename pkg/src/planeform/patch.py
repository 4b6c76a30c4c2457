"""Recover a global Gram matrix from a black-box function claimed quadratic on every plane.

The evaluator is probed for ``Q(0) = 0``, the parallelogram law and
degree-2 homogeneity; if it passes, the Gram matrix is assembled by
polarization on the standard basis and cross-checked on fresh vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import scalars
from .errors import DimensionMismatch, NotPositiveDefinite, NotQuadratic

MAX_DIM = 16


@dataclass(frozen=True)
class FormEvaluator:
    """Deterministic callable ``v -> Q(v)`` on ``n``-tuples of one scalar kind."""

    fn: Callable
    n: int
    scalar: str = scalars.RATIONAL
    name: str = "custom"

    def __post_init__(self):
        if not 2 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be in [2, {MAX_DIM}], got {self.n}")

    def __call__(self, v: Sequence) -> scalars.Scalar:
        if len(v) != self.n:
            raise DimensionMismatch(f"expected a {self.n}-vector, got length {len(v)}")
        return self.fn(tuple(v))

    def zero(self) -> tuple:
        return (scalars.to_kind(0, self.scalar),) * self.n

    def basis(self, i: int) -> tuple:
        z = scalars.to_kind(0, self.scalar)
        one = scalars.to_kind(1, self.scalar)
        return tuple(one if k == i else z for k in range(self.n))


@dataclass(frozen=True)
class GramN:
    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def form(self, v: Sequence) -> scalars.Scalar:
        return sum(v[i] * self.rows[i][j] * v[j] for i in range(self.n) for j in range(self.n))

    def restrict(self, i: int, j: int) -> tuple:
        """The 2x2 Gram block on coordinate plane ``(e_i, e_j)``."""
        return ((self.rows[i][i], self.rows[i][j]), (self.rows[j][i], self.rows[j][j]))

    def as_lists(self) -> list:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class Witness:
    """A replayable violation of quadraticity."""

    kind: str  # "zero" | "parallelogram" | "homogeneity" | "reconstruction"
    vectors: tuple
    residual: scalars.Scalar
    lam: scalars.Scalar | None = None
    gram: "GramN | None" = None

    def replay(self, q: FormEvaluator) -> scalars.Scalar:
        if self.kind == "zero":
            return q(self.vectors[0])
        if self.kind == "parallelogram":
            return parallelogram_residual(q, *self.vectors)
        if self.kind == "homogeneity":
            return homogeneity_residual(q, self.lam, self.vectors[0])
        if self.kind == "reconstruction":
            v = self.vectors[0]
            return self.gram.form(v) - q(v)
        raise ValueError(self.kind)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(s, v):
    return tuple(s * a for a in v)


def _check_dims(q: FormEvaluator, *vs) -> None:
    for v in vs:
        if len(v) != q.n:
            raise DimensionMismatch(f"expected a {q.n}-vector, got length {len(v)}")


def polarize_eval(q: FormEvaluator, u: Sequence, v: Sequence) -> scalars.Scalar:
    """``(Q(u + v) - Q(u) - Q(v)) / 2``."""
    _check_dims(q, u, v)
    return (q(_add(u, v)) - q(u) - q(v)) / 2


def parallelogram_residual(q: FormEvaluator, a: Sequence, b: Sequence) -> scalars.Scalar:
    """``2Q(a) + 2Q(b) - Q(a + b) - Q(a - b)``."""
    _check_dims(q, a, b)
    return 2 * q(a) + 2 * q(b) - q(_add(a, b)) - q(_sub(a, b))


def homogeneity_residual(q: FormEvaluator, lam, v: Sequence) -> scalars.Scalar:
    """``Q(lam v) - lam**2 Q(v)``."""
    _check_dims(q, v)
    return q(_scale(lam, v)) - lam * lam * q(v)


def _random_vector(rng: random.Random, n: int, kind: str) -> tuple:
    if kind == scalars.FLOAT:
        return tuple(rng.uniform(-1.0, 1.0) for _ in range(n))
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))


def _random_scalar(rng: random.Random, kind: str):
    if kind == scalars.FLOAT:
        return rng.uniform(-3.0, 3.0)
    return Fraction(rng.randint(-7, 7), rng.randint(1, 5))


def _too_big(res, scale, tol, kind) -> bool:
    if kind == scalars.RATIONAL:
        return abs(res) > tol
    return abs(res) > tol * max(1.0, scale)


def _probe_pairs(q: FormEvaluator, rng: random.Random, trials: int):
    """Basis pairs, then basis vs. basis-sum pairs, then random pairs."""
    e = [q.basis(i) for i in range(q.n)]
    for i, j in combinations(range(q.n), 2):
        yield e[i], e[j]
    for i, j in combinations(range(q.n), 2):
        yield e[i], _add(e[i], e[j])
        yield e[j], _add(e[i], e[j])
    for _ in range(trials):
        yield _random_vector(rng, q.n, q.scalar), _random_vector(rng, q.n, q.scalar)


def patch_form(q: FormEvaluator, trials: int = 64, tol=None, seed: int = 0) -> GramN:
    """Assemble the global Gram matrix of ``q`` or raise ``NotQuadratic``.

    ``tol`` defaults to 0 for exact evaluators and ``1e-9`` (relative to the
    magnitudes involved) for floats. Random probes are drawn from
    ``random.Random(seed)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    kind = q.scalar
    if tol is None:
        tol = 0 if kind == scalars.RATIONAL else 1e-9
    rng = random.Random(seed)

    z = q.zero()
    q0 = q(z)
    if _too_big(q0, 0.0, tol, kind):
        raise NotQuadratic(Witness("zero", (z,), q0))

    for a, b in _probe_pairs(q, rng, trials):
        res = parallelogram_residual(q, a, b)
        scale = abs(q(a)) + abs(q(b)) + abs(q(_add(a, b))) + abs(q(_sub(a, b)))
        if _too_big(res, scale, tol, kind):
            raise NotQuadratic(Witness("parallelogram", (a, b), res))

    for _ in range(min(trials, 16)):
        lam = _random_scalar(rng, kind)
        v = _random_vector(rng, q.n, kind)
        res = homogeneity_residual(q, lam, v)
        if _too_big(res, abs(q(_scale(lam, v))), tol, kind):
            raise NotQuadratic(Witness("homogeneity", (v,), res, lam=lam))

    e = [q.basis(i) for i in range(q.n)]
    rows = []
    for i in range(q.n):
        rows.append(tuple(polarize_eval(q, e[i], e[j]) for j in range(q.n)))
    # polarization is symmetric by construction; mirror to make it exact for floats too
    rows = tuple(tuple(rows[min(i, j)][max(i, j)] for j in range(q.n)) for i in range(q.n))
    gram = GramN(rows)

    for _ in range(trials):
        v = _random_vector(rng, q.n, kind)
        res = gram.form(v) - q(v)
        if _too_big(res, abs(q(v)), tol, kind):
            raise NotQuadratic(Witness("reconstruction", (v,), res, gram=gram))

    if not is_positive_definite(gram):
        raise NotPositiveDefinite(f"assembled Gram matrix is not positive-definite: minors {leading_minors(gram)}")
    return gram


def leading_minors(gram: GramN) -> list:
    """Leading principal minors via Gaussian elimination (pivots multiply out to the minors)."""
    n = gram.n
    a = [list(r) for r in gram.rows]
    minors = []
    acc = scalars.to_kind(1, scalars.kind_of(a[0][0]))
    for k in range(n):
        piv = a[k][k]
        acc = acc * piv
        minors.append(acc)
        if piv == 0:
            # later minors need pivoting; compute them directly from scratch
            minors.extend(_det([r[: m + 1] for r in gram.rows[: m + 1]]) for m in range(k + 1, n))
            return minors
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return minors


def _det(rows) -> scalars.Scalar:
    a = [list(r) for r in rows]
    n = len(a)
    det = scalars.to_kind(1, scalars.kind_of(a[0][0]))
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return det * 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def is_positive_definite(gram: GramN) -> bool:
    return all(m > 0 for m in leading_minors(gram))


# -- evaluators ----------------------------------------------------------------


def gram_evaluator(rows: Sequence[Sequence], name: str = "gram") -> FormEvaluator:
    rows = tuple(tuple(scalars.coerce(x) for x in r) for r in rows)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("Gram matrix must be square")
    kind = scalars.common_kind(x for r in rows for x in r)
    g = GramN(rows)
    return FormEvaluator(g.form, n, kind, name)


def sphere(n: int, kind: str = scalars.RATIONAL) -> FormEvaluator:
    return FormEvaluator(lambda v: sum(x * x for x in v), n, kind, "sphere")


def quartic(n: int, kind: str = scalars.RATIONAL) -> FormEvaluator:
    return FormEvaluator(lambda v: sum(x ** 4 for x in v), n, kind, "quartic")


def random_spd(n: int, rng: random.Random) -> tuple:
    """Rational symmetric positive-definite ``L @ L^T`` with a nonsingular lower-triangular ``L``."""
    low = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        low[i][i] = Fraction(rng.randint(1, 3), rng.randint(1, 2))
        for j in range(i):
            low[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return tuple(
        tuple(sum(low[i][k] * low[j][k] for k in range(n)) for j in range(n)) for i in range(n)
    )
