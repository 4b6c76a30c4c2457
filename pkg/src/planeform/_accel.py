"""Float kernels for the synthesizers, compiled with numba when available.

Set ``PLANEFORM_NUMBA=0`` to force the vectorized numpy path (also used
when numba cannot be imported). Both paths are importable as
``*_numba`` / ``*_numpy`` so tests and benchmarks can compare them.

Matrix stacks are ``(m, 2, 2)`` float64 arrays; Gram matrices are ``(2, 2)``.
"""

from __future__ import annotations

import os

import numpy as np

# contraction status codes
CONVERGED = 0
MAX_ITER = 1
STAGNATED = 2

# iterations without residual improvement before giving up
STAGNATION_WINDOW = 50

_want_numba = os.environ.get("PLANEFORM_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA and _want_numba
BACKEND = "numba" if USE_NUMBA else "numpy"


# -- numba kernels (explicit loops) ------------------------------------------


@njit(cache=True)
def _congruence(m, q, out):
    # out = m^T q m for 2x2 arrays
    for i in range(2):
        for j in range(2):
            s = 0.0
            for a in range(2):
                for b in range(2):
                    s += m[a, i] * q[a, b] * m[b, j]
            out[i, j] = s


@njit(cache=True)
def orbit_average_numba(mats, gram):
    acc = np.zeros((2, 2))
    tmp = np.empty((2, 2))
    for k in range(mats.shape[0]):
        _congruence(mats[k], gram, tmp)
        acc += tmp
    return acc / mats.shape[0]


@njit(cache=True)
def invariance_residual_numba(mats, gram):
    worst = 0.0
    tmp = np.empty((2, 2))
    for k in range(mats.shape[0]):
        _congruence(mats[k], gram, tmp)
        for i in range(2):
            for j in range(2):
                d = abs(tmp[i, j] - gram[i, j])
                if d > worst:
                    worst = d
    return worst


@njit(cache=True)
def _orbit_stats(steps, q, images):
    # fills images with g^T q g; returns (residual, orbit diameter) in max-abs norm
    s = steps.shape[0]
    for k in range(s):
        _congruence(steps[k], q, images[k])
    resid = 0.0
    diam = 0.0
    for k in range(s):
        for i in range(2):
            for j in range(2):
                d = abs(images[k, i, j] - q[i, j])
                if d > resid:
                    resid = d
        for l in range(k + 1, s):
            for i in range(2):
                for j in range(2):
                    d = abs(images[k, i, j] - images[l, i, j])
                    if d > diam:
                        diam = d
    return resid, max(resid, diam)


@njit(cache=True)
def contraction_numba(steps, gram0, tol, max_iter):
    s = steps.shape[0]
    q = gram0.copy()
    images = np.empty((s, 2, 2))
    resid_hist = np.zeros(max_iter + 1)
    diam_hist = np.zeros(max_iter + 1)
    best = np.inf
    since_best = 0
    for it in range(max_iter + 1):
        resid, diam = _orbit_stats(steps, q, images)
        resid_hist[it] = resid
        diam_hist[it] = diam
        if resid < tol or (tol == 0.0 and resid == 0.0):
            return q, it, resid_hist[: it + 1], diam_hist[: it + 1], CONVERGED
        if resid < best:
            best = resid
            since_best = 0
        else:
            since_best += 1
            if since_best >= STAGNATION_WINDOW:
                return q, it, resid_hist[: it + 1], diam_hist[: it + 1], STAGNATED
        if it == max_iter:
            break
        nxt = q.copy()
        for k in range(s):
            nxt += images[k]
        q = nxt / (s + 1)
        # keep the Gram exactly symmetric
        off = 0.5 * (q[0, 1] + q[1, 0])
        q[0, 1] = off
        q[1, 0] = off
    return q, max_iter, resid_hist, diam_hist, MAX_ITER


@njit(cache=True)
def rotate_many_numba(j, vs, thetas):
    out = np.empty_like(vs)
    for k in range(vs.shape[0]):
        c = np.cos(thetas[k])
        s = np.sin(thetas[k])
        x, y = vs[k, 0], vs[k, 1]
        out[k, 0] = c * x + s * (j[0, 0] * x + j[0, 1] * y)
        out[k, 1] = c * y + s * (j[1, 0] * x + j[1, 1] * y)
    return out


# -- numpy fallbacks (vectorized) --------------------------------------------


def _congruence_stack(mats, gram):
    return np.einsum("kai,ab,kbj->kij", mats, gram, mats)


def orbit_average_numpy(mats, gram):
    return _congruence_stack(mats, gram).mean(axis=0)


def invariance_residual_numpy(mats, gram):
    if mats.shape[0] == 0:
        return 0.0
    return float(np.abs(_congruence_stack(mats, gram) - gram).max())


def contraction_numpy(steps, gram0, tol, max_iter):
    s = steps.shape[0]
    q = gram0.copy()
    resid_hist = np.zeros(max_iter + 1)
    diam_hist = np.zeros(max_iter + 1)
    best = np.inf
    since_best = 0
    for it in range(max_iter + 1):
        images = _congruence_stack(steps, q)
        resid = float(np.abs(images - q).max())
        pair = np.abs(images[:, None] - images[None, :]).max() if s > 1 else 0.0
        resid_hist[it] = resid
        diam_hist[it] = max(resid, float(pair))
        if resid < tol or (tol == 0.0 and resid == 0.0):
            return q, it, resid_hist[: it + 1], diam_hist[: it + 1], CONVERGED
        if resid < best:
            best, since_best = resid, 0
        else:
            since_best += 1
            if since_best >= STAGNATION_WINDOW:
                return q, it, resid_hist[: it + 1], diam_hist[: it + 1], STAGNATED
        if it == max_iter:
            break
        q = (q + images.sum(axis=0)) / (s + 1)
        q = 0.5 * (q + q.T)
    return q, max_iter, resid_hist, diam_hist, MAX_ITER


def rotate_many_numpy(j, vs, thetas):
    c = np.cos(thetas)[:, None]
    s = np.sin(thetas)[:, None]
    return c * vs + s * (vs @ j.T)


if USE_NUMBA:
    orbit_average = orbit_average_numba
    invariance_residual = invariance_residual_numba
    contraction = contraction_numba
    rotate_many = rotate_many_numba
else:
    orbit_average = orbit_average_numpy
    invariance_residual = invariance_residual_numpy
    contraction = contraction_numpy
    rotate_many = rotate_many_numpy


def stack(mats) -> np.ndarray:
    """``Mat2`` sequence to a float64 ``(m, 2, 2)`` array."""
    return np.array([[[float(m.a11), float(m.a12)], [float(m.a21), float(m.a22)]] for m in mats], dtype=np.float64).reshape(-1, 2, 2)


def warmup() -> None:
    """Trigger compilation of every kernel on tiny inputs."""
    eye = np.eye(2)
    mats = eye[None].copy()
    orbit_average(mats, eye)
    invariance_residual(mats, eye)
    contraction(mats, eye, 1e-10, 2)
    rotate_many(eye, np.ones((1, 2)), np.zeros(1))
