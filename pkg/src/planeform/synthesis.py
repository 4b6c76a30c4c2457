"""Invariant positive-definite quadratic forms for bounded 2x2 matrix groups.

Three independent constructions:

* ``synth_averaging``: uniform average of ``m^T G0 m`` over a finite closure.
* ``synth_contraction``: repeated barycentre of a form and its images under
  the generators and their inverses, until the orbit collapses.
* ``synth_algebraic``: the symmetric form ``B(u, v) = (J u) ^ v`` built from
  the traceless part ``J`` of one determinant-1 member.

Every synthesizer returns the form together with a ``SynthesisReport``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _accel, scalars
from .errors import IncompleteClosure, NoConvergence, NotPositiveDefinite, ScreenFailed
from .groups import GroupClosure, GroupSpec, boundedness_screen, close_group
from .linalg import Mat2, Vec2, WedgeForm, traceless_decompose, wedge
from .scalars import Scalar


@dataclass(frozen=True)
class QuadraticForm:
    """``Q(v) = v^T gram v`` with an exactly symmetric Gram matrix."""

    gram: Mat2

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError(f"Gram matrix is not symmetric: {self.gram.as_rows()}")

    @classmethod
    def of(cls, p, q, r) -> "QuadraticForm":
        return cls(Mat2(p, q, q, r))

    @classmethod
    def standard(cls, kind: str = scalars.RATIONAL) -> "QuadraticForm":
        return cls(Mat2.identity(kind))

    @property
    def kind(self) -> str:
        return self.gram.kind

    def __call__(self, v: Vec2) -> Scalar:
        return self.polar(v, v)

    def polar(self, u: Vec2, v: Vec2) -> Scalar:
        g = self.gram
        return u.x1 * (g.a11 * v.x1 + g.a12 * v.x2) + u.x2 * (g.a21 * v.x1 + g.a22 * v.x2)

    def pullback(self, m: Mat2) -> "QuadraticForm":
        """The form ``v -> Q(m v)``."""
        return QuadraticForm(m.T @ self.gram @ m)

    def to_kind(self, kind: str) -> "QuadraticForm":
        return QuadraticForm(self.gram.to_kind(kind))

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(-self.gram)


@dataclass(frozen=True)
class SynthesisReport:
    method: str
    iterations: int
    residual: Scalar
    contraction_ratio: float | None = None
    ratios: tuple = ()
    path: str | None = None
    pivot: Mat2 | None = None
    extrapolated: bool = False


def is_positive_definite(q: QuadraticForm) -> bool:
    g = q.gram
    return g.a11 > 0 and g.det() > 0


def _members(g) -> list:
    return list(g.members) if isinstance(g, GroupClosure) else list(g)


def invariance_residual(q: QuadraticForm, g) -> Scalar:
    """Max over members ``m`` of the max-abs entry of ``m^T gram m - gram``."""
    mats = _members(g)
    if q.kind == scalars.FLOAT:
        return float(_accel.invariance_residual(_accel.stack(mats), _gram_array(q)))
    worst = Fraction(0)
    for m in mats:
        worst = max(worst, (m.T @ q.gram @ m - q.gram).max_abs())
    return worst


def _gram_array(q: QuadraticForm) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in q.gram.as_rows()])


def _from_array(a: np.ndarray) -> QuadraticForm:
    off = float(0.5 * (a[0, 1] + a[1, 0]))
    return QuadraticForm(Mat2(float(a[0, 0]), off, off, float(a[1, 1])))


def _require_pd(q0: QuadraticForm) -> None:
    if not is_positive_definite(q0):
        raise NotPositiveDefinite(f"starting form {q0.gram.as_rows()} is not positive-definite")


def synth_averaging(g: GroupClosure, q0: QuadraticForm) -> tuple[QuadraticForm, SynthesisReport]:
    """Average ``Q0(m v)`` over every member of a complete closure."""
    if not g.complete:
        raise IncompleteClosure("averaging needs a complete (finite) closure")
    _require_pd(q0)
    if q0.kind != g.kind:
        raise scalars.ScalarKindError("form and group use different scalar kinds")
    if g.kind == scalars.FLOAT:
        q = _from_array(_accel.orbit_average(_accel.stack(g.members), _gram_array(q0)))
    else:
        total = Mat2(0, 0, 0, 0)
        for m in g.members:
            total = total + m.T @ q0.gram @ m
        q = QuadraticForm(total / len(g))
    return q, SynthesisReport("averaging", 1, invariance_residual(q, g))


# -- contraction --------------------------------------------------------------


def _as_vec3(q: Mat2) -> tuple:
    return (q.a11, q.a12, q.a22)


def _solve_exact(cols: list, rhs: tuple):
    """Solve ``sum_j c_j * cols[j] == rhs`` (3-vectors of Fractions); ``None`` if inconsistent."""
    m = len(cols)
    rows = [[cols[j][i] for j in range(m)] + [rhs[i]] for i in range(3)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, 3) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(3):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][m] != 0 for i in range(r, 3)):
        return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][m]
    return sol


def _extrapolate(history: list):
    """Exact limit of a linear fixed-point iteration from its last few iterates.

    The iterates live in the 3-dimensional space of symmetric Gram matrices,
    so the differences satisfy a linear recurrence of order at most 3; once
    it is found, the fixed point is a weighted mean of the iterates.
    """
    xs = [_as_vec3(q) for q in history]
    for order in range(1, 4):
        if len(xs) < order + 2:
            return None
        window = xs[-(order + 2):]
        diffs = [tuple(b - a for a, b in zip(window[i], window[i + 1])) for i in range(order + 1)]
        sol = _solve_exact(diffs[:order], tuple(-x for x in diffs[order]))
        if sol is None:
            continue
        coeffs = sol + [Fraction(1)]
        total = sum(coeffs)
        if total == 0:
            continue
        p, q, r = (sum(c * x[i] for c, x in zip(coeffs, window)) / total for i in range(3))
        return Mat2(p, q, q, r)
    return None


def _orbit_stats_exact(steps: list, q: Mat2) -> tuple:
    images = [s.T @ q @ s for s in steps]
    resid = max((im - q).max_abs() for im in images)
    diam = resid
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            diam = max(diam, (images[i] - images[j]).max_abs())
    return images, resid, diam


def synth_contraction(
    spec: GroupSpec,
    q0: QuadraticForm,
    tol: Scalar = 1e-10,
    max_iter: int = 500,
) -> tuple[QuadraticForm, SynthesisReport]:
    """Barycentre iteration ``Q <- (Q + sum_g g^T Q g) / (s + 1)`` over generators and inverses.

    The generators' (possibly partial) closure is screened first. Each step
    replaces the form by a point of the convex hull of its orbit; the report
    records the measured orbit-diameter ratio of every step.

    With exact rationals the loop also tries to read off the exact fixed
    point from the latest iterates; a candidate is accepted only if its
    residual meets ``tol`` (``tol=0`` demands exact invariance).
    """
    _require_pd(q0)
    if q0.kind != spec.scalar:
        raise scalars.ScalarKindError("form and group use different scalar kinds")
    closure = close_group(spec)
    screen = boundedness_screen(closure)
    if not screen:
        raise ScreenFailed(screen)
    steps = list(closure.generators)
    if spec.scalar == scalars.FLOAT:
        return _contraction_float(steps, q0, float(tol), max_iter)
    return _contraction_exact(steps, q0, Fraction(tol), max_iter)


def _ratios(diams) -> tuple:
    return tuple(float(b / a) for a, b in zip(diams, diams[1:]) if a != 0)


def _contraction_float(steps, q0, tol, max_iter):
    gram, iters, resid, diam, status = _accel.contraction(
        _accel.stack(steps), _gram_array(q0), float(tol), int(max_iter)
    )
    if status != _accel.CONVERGED:
        raise NoConvergence(max_iter, float(resid[-1]))
    q = _from_array(gram)
    ratios = _ratios(list(diam))
    report = SynthesisReport(
        "contraction",
        int(iters),
        invariance_residual(q, steps),
        contraction_ratio=max(ratios) if ratios else None,
        ratios=ratios,
    )
    return q, report


def _contraction_exact(steps, q0, tol, max_iter):
    s = len(steps)
    q = q0.gram
    history = [q]
    diams = []
    for it in range(max_iter + 1):
        images, resid, diam = _orbit_stats_exact(steps, q)
        diams.append(diam)
        if resid == 0:
            return _exact_result(QuadraticForm(q), steps, it, diams, extrapolated=False)
        # an exact fixed point beats an iterate that merely meets tol
        candidate = _extrapolate(history)
        if candidate is not None:
            cq = QuadraticForm(candidate)
            if is_positive_definite(cq) and invariance_residual(cq, steps) <= tol:
                return _exact_result(cq, steps, it, diams, extrapolated=True)
        if resid <= tol:
            return _exact_result(QuadraticForm(q), steps, it, diams, extrapolated=False)
        if it == max_iter:
            break
        total = q
        for im in images:
            total = total + im
        q = total / (s + 1)
        history.append(q)
    raise NoConvergence(max_iter, resid)


def _exact_result(q, steps, iters, diams, extrapolated):
    ratios = _ratios(diams)
    report = SynthesisReport(
        "contraction",
        iters,
        invariance_residual(q, steps),
        contraction_ratio=max(ratios) if ratios else None,
        ratios=ratios,
        extrapolated=extrapolated,
    )
    return q, report


# -- algebraic construction ---------------------------------------------------


def _basis(kind: str) -> tuple:
    one, zero = scalars.to_kind(1, kind), scalars.to_kind(0, kind)
    return Vec2(one, zero), Vec2(zero, one)


def wedge_form_gram(a: Mat2, w: WedgeForm) -> Mat2:
    """Gram matrix of ``B(u, v) = ((A u) ^ v + (A v) ^ u) / 2``."""
    e = _basis(a.kind)
    half = scalars.to_kind(Fraction(1, 2), a.kind)
    b = [[half * (wedge(w, a @ e[i], e[j]) + wedge(w, a @ e[j], e[i])) for j in range(2)] for i in range(2)]
    return Mat2.rows(b)


def synth_algebraic(g: GroupClosure, w: WedgeForm = WedgeForm()) -> tuple[QuadraticForm, SynthesisReport]:
    """Invariant form from the traceless part of one determinant-1 member."""
    if not g.complete:
        raise IncompleteClosure("the algebraic construction needs a complete closure")
    screen = boundedness_screen(g)
    if not screen:
        raise ScreenFailed(screen)
    kind = g.kind
    tol = 0.0 if kind == scalars.RATIONAL else 1e-9
    ordered = g.sorted_members()
    pivot = next(
        (m for m in ordered if scalars.close(m.det(), 1, tol) and not m.is_scalar(tol)),
        None,
    )
    if pivot is None:
        q, path, pivot = _degenerate_form(ordered, kind, tol)
    else:
        j = traceless_decompose(pivot).j
        gram = wedge_form_gram(pivot, w)
        e1 = _basis(kind)[0]
        b2 = j @ e1
        # B(b1, b1) = b2 ^ b1 is nonzero; its sign fixes definiteness
        if wedge(w, b2, e1) < 0:
            gram = -gram
        q, path = QuadraticForm(gram), "main"
    report = SynthesisReport("algebraic", 1, invariance_residual(q, g), path=path, pivot=pivot)
    return q, report


def _degenerate_form(ordered, kind, tol):
    """Every determinant-1 member is scalar: the group is ``{+-1}`` or ``{+-1, +-A}``."""
    refl = next((m for m in ordered if scalars.close(m.det(), -1, tol)), None)
    if refl is None:
        return QuadraticForm.standard(kind), "degenerate-scalar", None
    ident = Mat2.identity(kind)
    if not (refl @ refl).close(ident, tol):
        raise AssertionError("a determinant -1 member of a screened group must be an involution")
    half = scalars.to_kind(Fraction(1, 2), kind)
    e = _basis(kind)
    plus = next(v for v in ((x + refl @ x) * half for x in e) if not v.is_zero(tol))
    minus = next(v for v in ((x - refl @ x) * half for x in e) if not v.is_zero(tol))
    p_inv = Mat2(plus.x1, minus.x1, plus.x2, minus.x2).inverse()
    gram = p_inv.T @ p_inv
    # symmetrize away float round-off; exact input is already symmetric
    gram = Mat2(gram.a11, gram.a12, gram.a12, gram.a22)
    return QuadraticForm(gram), "degenerate-reflection", refl


# -- comparisons --------------------------------------------------------------


@dataclass(frozen=True)
class Proportionality:
    proportional: bool
    ratio: Scalar
    deviation: Scalar


def proportionality(q1: QuadraticForm, q2: QuadraticForm, tol: float = 1e-8) -> Proportionality:
    """Whether ``q1 = ratio * q2`` with ``ratio > 0``.

    Exact when both forms are rational; otherwise both are compared as
    floats with relative max-abs deviation below ``tol``.
    """
    a, b = q1.gram, q2.gram
    exact = a.kind == b.kind == scalars.RATIONAL
    if not exact:
        a, b = a.to_kind(scalars.FLOAT), b.to_kind(scalars.FLOAT)
    if b.trace() == 0:
        return Proportionality(False, 0, a.max_abs())
    ratio = a.trace() / b.trace()
    dev = (a - b * ratio).max_abs() / a.max_abs()
    ok = ratio > 0 and (dev == 0 if exact else dev < tol)
    return Proportionality(ok, ratio, dev)
