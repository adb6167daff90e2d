"""Hot numeric kernels: hinge-penalty descent and trilinear Jacobian grids.

Two implementations of each kernel: a numba-compiled loop (default) and a
vectorized numpy fallback, selected by the HEXTET_NO_NUMBA environment
flag.  Both minimize

    sum_b max(0, eps - target_b * det_b)^2

over the free point coordinates, where det_b is the homogeneous 4x4
determinant of basis b, via Adam steps on the analytic gradient.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit
from .chirotope import BASES

BASIS_ARRAY = np.array([[v - 1 for v in b] for b in BASES], dtype=np.int64)

STATUS_SATISFIED = 1
STATUS_EXHAUSTED = 0


@njit(cache=True)
def _descent_numba(pts, free_rows, basis, target, eps, n_iters, lr):
    n_b = basis.shape[0]
    n_f = free_rows.shape[0]
    m1 = np.zeros((n_f, 3))
    m2 = np.zeros((n_f, 3))
    beta1 = 0.9
    beta2 = 0.999
    grad = np.zeros((8, 3))
    b1t = 1.0
    b2t = 1.0
    for it in range(n_iters):
        grad[:, :] = 0.0
        worst = 1e300
        for b in range(n_b):
            i0, i1, i2, i3 = basis[b, 0], basis[b, 1], basis[b, 2], basis[b, 3]
            ux = pts[i1, 0] - pts[i0, 0]
            uy = pts[i1, 1] - pts[i0, 1]
            uz = pts[i1, 2] - pts[i0, 2]
            vx = pts[i2, 0] - pts[i0, 0]
            vy = pts[i2, 1] - pts[i0, 1]
            vz = pts[i2, 2] - pts[i0, 2]
            wx = pts[i3, 0] - pts[i0, 0]
            wy = pts[i3, 1] - pts[i0, 1]
            wz = pts[i3, 2] - pts[i0, 2]
            cx = vy * wz - vz * wy
            cy = vz * wx - vx * wz
            cz = vx * wy - vy * wx
            det = ux * cx + uy * cy + uz * cz
            margin = target[b] * det
            if margin < worst:
                worst = margin
            viol = eps - margin
            if viol > 0.0:
                coef = -2.0 * viol * target[b]
                # d det / d p1 = (v x w); p2 = (w x u); p3 = (u x v)
                g1x, g1y, g1z = cx, cy, cz
                g2x = wy * uz - wz * uy
                g2y = wz * ux - wx * uz
                g2z = wx * uy - wy * ux
                g3x = uy * vz - uz * vy
                g3y = uz * vx - ux * vz
                g3z = ux * vy - uy * vx
                grad[i1, 0] += coef * g1x
                grad[i1, 1] += coef * g1y
                grad[i1, 2] += coef * g1z
                grad[i2, 0] += coef * g2x
                grad[i2, 1] += coef * g2y
                grad[i2, 2] += coef * g2z
                grad[i3, 0] += coef * g3x
                grad[i3, 1] += coef * g3y
                grad[i3, 2] += coef * g3z
                grad[i0, 0] -= coef * (g1x + g2x + g3x)
                grad[i0, 1] -= coef * (g1y + g2y + g3y)
                grad[i0, 2] -= coef * (g1z + g2z + g3z)
        if worst >= eps:
            return STATUS_SATISFIED
        b1t *= beta1
        b2t *= beta2
        for f in range(n_f):
            r = free_rows[f]
            for c in range(3):
                g = grad[r, c]
                m1[f, c] = beta1 * m1[f, c] + (1.0 - beta1) * g
                m2[f, c] = beta2 * m2[f, c] + (1.0 - beta2) * g * g
                mhat = m1[f, c] / (1.0 - b1t)
                vhat = m2[f, c] / (1.0 - b2t)
                x = pts[r, c] - lr * mhat / (np.sqrt(vhat) + 1e-12)
                if x > 10.0:
                    x = 10.0
                elif x < -10.0:
                    x = -10.0
                pts[r, c] = x
    # final check after the last step
    ok = True
    for b in range(n_b):
        i0, i1, i2, i3 = basis[b, 0], basis[b, 1], basis[b, 2], basis[b, 3]
        ux = pts[i1, 0] - pts[i0, 0]
        uy = pts[i1, 1] - pts[i0, 1]
        uz = pts[i1, 2] - pts[i0, 2]
        vx = pts[i2, 0] - pts[i0, 0]
        vy = pts[i2, 1] - pts[i0, 1]
        vz = pts[i2, 2] - pts[i0, 2]
        wx = pts[i3, 0] - pts[i0, 0]
        wy = pts[i3, 1] - pts[i0, 1]
        wz = pts[i3, 2] - pts[i0, 2]
        det = (
            ux * (vy * wz - vz * wy)
            + uy * (vz * wx - vx * wz)
            + uz * (vx * wy - vy * wx)
        )
        if target[b] * det < eps:
            ok = False
            break
    return STATUS_SATISFIED if ok else STATUS_EXHAUSTED


def _dets_numpy(pts, basis):
    a = pts[basis]  # (n, 4, 3)
    u = a[:, 1] - a[:, 0]
    v = a[:, 2] - a[:, 0]
    w = a[:, 3] - a[:, 0]
    return np.einsum("ij,ij->i", u, np.cross(v, w))


def _descent_numpy(pts, free_rows, basis, target, eps, n_iters, lr):
    n_f = len(free_rows)
    m1 = np.zeros((n_f, 3))
    m2 = np.zeros((n_f, 3))
    beta1, beta2 = 0.9, 0.999
    b1t = b2t = 1.0
    for it in range(n_iters):
        a = pts[basis]
        u = a[:, 1] - a[:, 0]
        v = a[:, 2] - a[:, 0]
        w = a[:, 3] - a[:, 0]
        cvw = np.cross(v, w)
        dets = np.einsum("ij,ij->i", u, cvw)
        margins = target * dets
        if margins.min() >= eps:
            return STATUS_SATISFIED
        viol = np.maximum(0.0, eps - margins)
        coef = -2.0 * viol * target  # (n,)
        g1 = cvw
        g2 = np.cross(w, u)
        g3 = np.cross(u, v)
        g0 = -(g1 + g2 + g3)
        grad = np.zeros((8, 3))
        contrib = np.stack((g0, g1, g2, g3), axis=1) * coef[:, None, None]
        np.add.at(grad, basis.reshape(-1), contrib.reshape(-1, 3))
        g = grad[free_rows]
        b1t *= beta1
        b2t *= beta2
        m1 = beta1 * m1 + (1 - beta1) * g
        m2 = beta2 * m2 + (1 - beta2) * g * g
        step = lr * (m1 / (1 - b1t)) / (np.sqrt(m2 / (1 - b2t)) + 1e-12)
        pts[free_rows] = np.clip(pts[free_rows] - step, -10.0, 10.0)
    margins = target * _dets_numpy(pts, basis)
    return STATUS_SATISFIED if margins.min() >= eps else STATUS_EXHAUSTED


def descent(pts, free_rows, basis, target, eps, n_iters, lr):
    """Dispatch to the compiled or the numpy implementation."""
    if HAVE_NUMBA:
        return _descent_numba(pts, free_rows, basis, target, eps, n_iters, lr)
    return _descent_numpy(pts, free_rows, basis, target, eps, n_iters, lr)


# ----- trilinear hexahedron Jacobian --------------------------------------


@njit(cache=True)
def _jacobian_grid_numba(corners, samples):
    n = samples.shape[0]
    worst = 1e300
    for a in range(n):
        for b in range(n):
            for c in range(n):
                u, v, w = samples[a], samples[b], samples[c]
                # d phi / du, dv, dw of the trilinear interpolant
                jx0 = jx1 = jx2 = 0.0
                jy0 = jy1 = jy2 = 0.0
                jz0 = jz1 = jz2 = 0.0
                for k in range(8):
                    su = 1.0 if (k & 1) else 0.0
                    sv = 1.0 if (k & 2) else 0.0
                    sw = 1.0 if (k & 4) else 0.0
                    fu = su * u + (1 - su) * (1 - u)
                    fv = sv * v + (1 - sv) * (1 - v)
                    fw = sw * w + (1 - sw) * (1 - w)
                    du = (2 * su - 1) * fv * fw
                    dv = (2 * sv - 1) * fu * fw
                    dw = (2 * sw - 1) * fu * fv
                    jx0 += du * corners[k, 0]
                    jy0 += du * corners[k, 1]
                    jz0 += du * corners[k, 2]
                    jx1 += dv * corners[k, 0]
                    jy1 += dv * corners[k, 1]
                    jz1 += dv * corners[k, 2]
                    jx2 += dw * corners[k, 0]
                    jy2 += dw * corners[k, 1]
                    jz2 += dw * corners[k, 2]
                det = (
                    jx0 * (jy1 * jz2 - jz1 * jy2)
                    - jy0 * (jx1 * jz2 - jz1 * jx2)
                    + jz0 * (jx1 * jy2 - jy1 * jx2)
                )
                if det < worst:
                    worst = det
    return worst


def _jacobian_grid_numpy(corners, samples):
    n = len(samples)
    u = samples[:, None, None]
    v = samples[None, :, None]
    w = samples[None, None, :]
    j = np.zeros((3, 3, n, n, n))
    for k in range(8):
        su, sv, sw = float(k & 1 > 0), float(k & 2 > 0), float(k & 4 > 0)
        fu = su * u + (1 - su) * (1 - u)
        fv = sv * v + (1 - sv) * (1 - v)
        fw = sw * w + (1 - sw) * (1 - w)
        du = (2 * su - 1) * fv * fw
        dv = (2 * sv - 1) * fu * fw
        dw = (2 * sw - 1) * fu * fv
        for c in range(3):
            j[0, c] += du * corners[k, c]
            j[1, c] += dv * corners[k, c]
            j[2, c] += dw * corners[k, c]
    det = (
        j[0, 0] * (j[1, 1] * j[2, 2] - j[1, 2] * j[2, 1])
        - j[0, 1] * (j[1, 0] * j[2, 2] - j[1, 2] * j[2, 0])
        + j[0, 2] * (j[1, 0] * j[2, 1] - j[1, 1] * j[2, 0])
    )
    return float(det.min())


def jacobian_grid_min(corners: np.ndarray, n_samples: int = 5) -> float:
    """Minimum trilinear Jacobian determinant over an n^3 sample grid.

    `corners` is an (8, 3) array in binary corner order: bit0 = u, bit1 = v,
    bit2 = w.
    """
    samples = np.linspace(0.0, 1.0, n_samples)
    corners = np.asarray(corners, dtype=np.float64)
    if HAVE_NUMBA:
        return float(_jacobian_grid_numba(corners, samples))
    return _jacobian_grid_numpy(corners, samples)
