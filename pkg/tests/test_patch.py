import random
from fractions import Fraction as F

import pytest

from planeform.errors import DimensionMismatch, NotPositiveDefinite, NotQuadratic
from planeform.patch import (
    FormEvaluator,
    GramN,
    gram_evaluator,
    homogeneity_residual,
    leading_minors,
    parallelogram_residual,
    patch_form,
    polarize_eval,
    quartic,
    random_spd,
    sphere,
)


def test_polarize_examples():
    assert polarize_eval(sphere(2), (1, 0), (0, 1)) == 0
    assert polarize_eval(gram_evaluator([[1, -1], [-1, 2]]), (F(1), F(0)), (F(0), F(1))) == -1


def test_parallelogram_examples():
    assert parallelogram_residual(sphere(2), (F(3), F(-1)), (F(1, 2), F(7))) == 0
    assert parallelogram_residual(quartic(2), (1, 0), (1, 1)) == -12
    triple = FormEvaluator(lambda v: 3 * (v[0] ** 2 - v[0] * v[1] + 2 * v[1] ** 2), 2)
    assert parallelogram_residual(triple, (F(2), F(5)), (F(-1), F(1, 3))) == 0


def test_patch_sphere():
    g = patch_form(sphere(3))
    assert g.as_lists() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("n", range(2, 7))
def test_patch_round_trip(n):
    m = random_spd(n, random.Random(100 + n))
    assert patch_form(gram_evaluator(m)).rows == m


def test_quartic_witness_replays():
    with pytest.raises(NotQuadratic) as info:
        patch_form(quartic(3))
    w = info.value.witness
    assert w.kind == "parallelogram"
    assert w.vectors == ((1, 0, 0), (1, 1, 0))
    assert w.residual == -12 and w.replay(quartic(3)) == -12


def test_non_homogeneous_witness():
    # passes the parallelogram law but is not homogeneous
    additive = FormEvaluator(lambda v: 0 if v[0].denominator == 1 else v[0] ** 2, 2)
    with pytest.raises(NotQuadratic) as info:
        patch_form(additive)
    w = info.value.witness
    assert w.replay(additive) == w.residual != 0


def test_zero_witness():
    with pytest.raises(NotQuadratic) as info:
        patch_form(FormEvaluator(lambda v: sum(x * x for x in v) + 1, 2))
    assert info.value.witness.kind == "zero"


def test_biadditive_polarization():
    m = random_spd(4, random.Random(1))
    q = gram_evaluator(m)
    rng = random.Random(2)

    def vec():
        return tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))

    for _ in range(20):
        u, v, w = vec(), vec(), vec()
        uv = tuple(a + b for a, b in zip(u, v))
        assert polarize_eval(q, uv, w) == polarize_eval(q, u, w) + polarize_eval(q, v, w)
        assert homogeneity_residual(q, F(-7, 3), u) == 0


def test_planar_restriction():
    m = random_spd(5, random.Random(9))
    g = patch_form(gram_evaluator(m))
    for i in range(5):
        for j in range(i + 1, 5):
            block = g.restrict(i, j)
            planar = patch_form(gram_evaluator(block))
            assert planar.rows == block


def test_float_evaluator():
    m = [[2.0, 0.5, 0.0], [0.5, 1.0, 0.25], [0.0, 0.25, 3.0]]
    g = patch_form(gram_evaluator(m))
    for i in range(3):
        for j in range(3):
            assert g[i, j] == pytest.approx(m[i][j], abs=1e-12)


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        patch_form(gram_evaluator([[1, 0], [0, -1]]))


def test_leading_minors_and_dims():
    assert leading_minors(GramN(((F(2), F(1)), (F(1), F(2))))) == [2, 3]
    with pytest.raises(DimensionMismatch):
        sphere(3)((1, 2))
    with pytest.raises(ValueError):
        sphere(1)
