#!/usr/bin/env python3
"""Compare the numba-compiled and pure-numpy kernel paths.

Runs the hinge-penalty descent and the trilinear Jacobian grid with both
implementations on identical inputs and prints a timing table.  Set
HEXTET_NO_NUMBA=1 to force the whole package onto the numpy path instead.
"""

import time
from fractions import Fraction

import numpy as np

from hextet._accel import HAVE_NUMBA
from hextet.exactgeom import chirotope_of_points
from hextet.kernels import (
    BASIS_ARRAY,
    _descent_numpy,
    _jacobian_grid_numpy,
)

PERTURBED_CUBE = {
    1: (0, 0, 0), 2: (97, 3, 1), 3: (101, 99, -2), 4: (2, 103, 1),
    5: (1, -3, 100), 6: (99, 2, 103), 7: (98, 101, 99), 8: (-1, 97, 102),
}


def _target():
    pts = {k: tuple(Fraction(c) for c in v) for k, v in PERTURBED_CUBE.items()}
    chi = chirotope_of_points(pts)
    return np.array(chi.signs, dtype=np.float64), chi.sign(1, 2, 3, 5)


def _start(rng, frame_sign):
    pts = np.zeros((8, 3))
    pts[1] = (1, 0, 0)
    pts[2] = (1, 1, 0)
    pts[4] = (0, 0, float(frame_sign))
    pts[[3, 5, 6, 7]] = rng.uniform(-1.5, 2.5, (4, 3))
    return pts


def bench_descent(n_restarts=24, iters=10_000):
    target, frame_sign = _target()
    free = np.array([3, 5, 6, 7], dtype=np.int64)
    results = {}

    variants = [("numpy", _descent_numpy)]
    if HAVE_NUMBA:
        from hextet.kernels import _descent_numba

        # trigger compilation outside the timed region
        _descent_numba(_start(np.random.default_rng(0), frame_sign), free,
                       BASIS_ARRAY, target, 1e-4, 10, 0.04)
        variants.insert(0, ("numba", _descent_numba))

    for name, fn in variants:
        rng = np.random.default_rng(1)
        t0 = time.perf_counter()
        hits = 0
        for _ in range(n_restarts):
            pts = _start(rng, frame_sign)
            hits += fn(pts, free, BASIS_ARRAY, target, 1e-4, iters, 0.04)
        results[name] = (time.perf_counter() - t0, hits)
    return results


def bench_jacobian(n_repeats=200, n_samples=9):
    rng = np.random.default_rng(2)
    cube = np.array([[b & 1, (b >> 1) & 1, (b >> 2) & 1] for b in range(8)], float)
    corners = cube + rng.normal(0, 0.05, (8, 3))
    samples = np.linspace(0.0, 1.0, n_samples)
    results = {}

    variants = [("numpy", lambda c: _jacobian_grid_numpy(c, samples))]
    if HAVE_NUMBA:
        from hextet.kernels import _jacobian_grid_numba

        _jacobian_grid_numba(corners, samples)
        variants.insert(0, ("numba", lambda c: _jacobian_grid_numba(c, samples)))

    for name, fn in variants:
        t0 = time.perf_counter()
        for _ in range(n_repeats):
            fn(corners)
        results[name] = (time.perf_counter() - t0, n_repeats)
    return results


def main():
    print(f"numba available: {HAVE_NUMBA}")
    print()
    print("hinge-penalty descent (24 restarts x 10k iterations)")
    desc = bench_descent()
    for name, (dt, hits) in desc.items():
        print(f"  {name:>6}: {dt:8.2f}s   ({hits} restarts satisfied the margin)")
    if len(desc) == 2:
        print(f"  speedup: {desc['numpy'][0] / desc['numba'][0]:.1f}x")
    print()
    print("trilinear Jacobian 9x9x9 grid (200 evaluations)")
    jac = bench_jacobian()
    for name, (dt, n) in jac.items():
        print(f"  {name:>6}: {dt:8.3f}s   ({1000 * dt / n:.2f} ms/eval)")
    if len(jac) == 2:
        print(f"  speedup: {jac['numpy'][0] / jac['numba'][0]:.1f}x")


if __name__ == "__main__":
    main()
