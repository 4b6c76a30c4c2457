from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import det_x_minus
from planeform.errors import NotTraceless, ScalarKindError
from planeform.linalg import (
    Mat2,
    Vec2,
    WedgeForm,
    cayley_hamilton_residual,
    char_poly,
    traceless_decompose,
    traceless_inner,
    wedge,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
mats = st.builds(Mat2, rationals, rationals, rationals, rationals)
vecs = st.builds(Vec2, rationals, rationals)

D = Mat2(1, 0, 0, -1)
S = Mat2(0, 1, 1, 0)
R = Mat2(0, 1, -1, 0)


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0], [0, 1]], (2, 1)),
        ([[0, 1], [-1, 0]], (0, 1)),
        ([[2, 0], [0, F(1, 2)]], (F(5, 2), 1)),
    ],
)
def test_char_poly_examples(rows, expected):
    assert char_poly(Mat2.rows(rows)) == expected


@given(mats)
def test_char_poly_matches_determinant_expansion(m):
    c1, c0 = det_x_minus(m.as_rows())
    assert char_poly(m) == (-c1, c0)


@given(mats)
def test_cayley_hamilton_exact(m):
    assert cayley_hamilton_residual(m).is_zero(0.0)


def test_scalar_kinds_never_mix():
    with pytest.raises(ScalarKindError):
        Mat2(1.0, 0, 0, 1)
    with pytest.raises(ScalarKindError):
        Vec2(F(1, 2), 0.5)
    assert Mat2(1, 2, 3, 4).a11 == F(1)
    assert isinstance(Mat2(1, 2, 3, 4).a11, F)


def test_wedge_examples():
    w = WedgeForm(1)
    assert wedge(w, Vec2(1, 0), Vec2(0, 1)) == 1
    assert wedge(w, Vec2(3, 7), Vec2(3, 7)) == 0
    assert wedge(w, Vec2(1, 2), Vec2(3, 4)) == -2


@given(vecs, vecs, vecs, rationals, rationals.filter(lambda c: c != 0))
def test_wedge_antisymmetric_bilinear(u, v, x, lam, c):
    w = WedgeForm(c)
    assert wedge(w, u, v) == -wedge(w, v, u)
    assert wedge(w, u * lam + x, v) == lam * wedge(w, u, v) + wedge(w, x, v)


def test_wedge_rejects_zero_normalization():
    with pytest.raises(ValueError):
        WedgeForm(0)


def test_traceless_decompose_examples():
    d = traceless_decompose(R)
    assert (d.tau, d.j, d.j_square) == (0, R, -1)
    d = traceless_decompose(Mat2.identity())
    assert d.tau == 1 and d.j.is_zero(0.0) and d.j_square == 0 and not d.nilpotent
    d = traceless_decompose(Mat2(1, 1, 0, 1))
    assert d.tau == 1 and d.j == Mat2(0, 1, 0, 0) and d.j_square == 0 and d.nilpotent


@given(mats)
def test_traceless_decompose_invariants(m):
    d = traceless_decompose(m)
    assert d.j.trace() == 0
    assert d.j @ d.j == Mat2.scalar(d.j_square)
    assert Mat2.scalar(d.tau) + d.j == m
    assert d.j_square == -d.j.det() == (d.j @ d.j).trace() / 2


def test_traceless_inner_signature():
    basis = [D, S, R]
    gram = [[traceless_inner(a, b) for b in basis] for a in basis]
    assert gram == [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    assert traceless_inner(R, -R) == 1


def test_traceless_inner_requires_traceless():
    with pytest.raises(NotTraceless):
        traceless_inner(Mat2.identity(), R)


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_traceless_inner_symmetric(a, b, c, d, e, f):
    x, y = Mat2(a, b, c, -a), Mat2(d, e, f, -d)
    assert traceless_inner(x, y) == traceless_inner(y, x)


def test_float_backend_tolerance():
    m = Mat2(0.1, 0.2, 0.3, 0.4)
    assert cayley_hamilton_residual(m).is_zero(1e-12)
    assert traceless_decompose(m).j.trace() == pytest.approx(0.0, abs=1e-12)
