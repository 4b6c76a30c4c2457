"""The complex structure determined by a quadratic form and a wedge normalization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel, scalars
from .errors import NotPositiveDefinite
from .linalg import E, Mat2, Vec2, WedgeForm
from .synthesis import QuadraticForm, is_positive_definite


@dataclass(frozen=True)
class ComplexStructure:
    """``j`` with ``j @ j == -I``.

    ``wedge`` is the rescaled normalization for which the form's polar
    ``<u, v>`` equals ``(j u) ^ v``; ``raw`` is the operator before rescaling.
    """

    j: Mat2
    orientation: int
    wedge: WedgeForm
    raw: Mat2


def derive_j(q: QuadraticForm, w: WedgeForm = WedgeForm()) -> ComplexStructure:
    """Solve ``<u, v> = (J0 u) ^ v`` for ``J0`` and rescale it to square to ``-I``.

    ``J0 = E @ gram / c`` and ``J0 @ J0 = -(det(gram) / c**2) I``. Exact forms
    whose determinant is not a rational square raise ``IrrationalNormalizer``.
    """
    if not is_positive_definite(q):
        raise NotPositiveDefinite(f"{q.gram.as_rows()} is not positive-definite")
    kind = q.kind
    c = scalars.to_kind(w.c, kind)
    raw = E.to_kind(kind) @ q.gram / c
    sq = raw @ raw
    tol = 0.0 if kind == scalars.RATIONAL else scalars.FLOAT_TOL * max(1.0, float(sq.max_abs()))
    if not (sq.is_scalar(tol) and sq.a11 < 0):
        raise AssertionError("J0 squared must be a negative scalar")
    root_det = scalars.sqrt(q.gram.det())
    orientation = 1 if c > 0 else -1
    j = E.to_kind(kind) @ q.gram * orientation / root_det
    return ComplexStructure(j=j, orientation=orientation, wedge=WedgeForm(root_det * orientation), raw=raw)


def opposite(cs: ComplexStructure) -> ComplexStructure:
    """The other orientation: ``-j`` with the wedge sign flipped."""
    return ComplexStructure(j=-cs.j, orientation=-cs.orientation, wedge=WedgeForm(-cs.wedge.c), raw=-cs.raw)


def rotate(v: Vec2, theta: float, cs: ComplexStructure) -> Vec2:
    """``cos(theta) v + sin(theta) j v``."""
    v = v.to_kind(scalars.FLOAT)
    jv = cs.j.to_kind(scalars.FLOAT) @ v
    c, s = math.cos(theta), math.sin(theta)
    return Vec2(c * v.x1 + s * jv.x1, c * v.x2 + s * jv.x2)


def rotate_many(vs: np.ndarray, thetas: np.ndarray, cs: ComplexStructure) -> np.ndarray:
    """Vectorized ``rotate`` for an ``(N, 2)`` array of vectors."""
    j = np.array([[float(x) for x in row] for row in cs.j.as_rows()])
    return _accel.rotate_many(j, np.ascontiguousarray(vs, dtype=np.float64), np.ascontiguousarray(thetas, dtype=np.float64))
