"""Compare the numba and numpy float kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from planeform import _accel


def rotation_stack(m, seed=0):
    t = np.random.default_rng(seed).uniform(-np.pi, np.pi, size=m)
    c, s = np.cos(t), np.sin(t)
    return np.ascontiguousarray(np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], 1))


def cases():
    gram = np.array([[1.0, 0.3], [0.3, 2.0]])
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    big = rotation_stack(4096)
    gens = rotation_stack(2, seed=1)
    vs = np.random.default_rng(2).uniform(-1, 1, size=(100_000, 2))
    th = np.random.default_rng(3).uniform(-3, 3, size=100_000)
    yield "orbit_average (4096 members)", "orbit_average", (big, gram)
    yield "invariance_residual (4096)", "invariance_residual", (big, gram)
    yield "contraction (2 generators)", "contraction", (gens, gram, 1e-12, 500)
    yield "rotate_many (100k vectors)", "rotate_many", (j, vs, th)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed")
    _accel.warmup()
    print(f"{'kernel':32s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for label, name, fargs in cases():
        fast = getattr(_accel, f"{name}_numba")
        slow = getattr(_accel, f"{name}_numpy")
        tf = min(timeit.repeat(lambda: fast(*fargs), number=1, repeat=args.repeat)) * 1e3
        ts = min(timeit.repeat(lambda: slow(*fargs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:32s} {tf:10.3f} {ts:10.3f} {ts / tf:7.1f}x")


if __name__ == "__main__":
    main()
