"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``.

The arithmetic is performed in the same order as the C loops so both
backends make identical decisions on identical input.
"""
from __future__ import annotations

import math

import numpy as np

SQRT2 = float(np.sqrt(2.0))


def _dist(x, y):
    # x, y: (..., d); sequential sum over the last axis, as in the C kernel
    diff = x - y
    s = diff[..., 0] * diff[..., 0]
    for k in range(1, diff.shape[-1]):
        s = s + diff[..., k] * diff[..., k]
    return np.sqrt(s)


def _max_violation(y, c, r):
    v = _dist(y, c[:, 0]) - r[0]
    for i in range(1, c.shape[1]):
        v = np.maximum(v, _dist(y, c[:, i]) - r[i])
    return v


def _solve(A, b, m):
    # Gaussian elimination with partial pivoting; same operation order as C
    for col in range(m):
        piv = col
        best = abs(A[col][col])
        for row in range(col + 1, m):
            if abs(A[row][col]) > best:
                best = abs(A[row][col])
                piv = row
        if best == 0.0:
            return False
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            b[col], b[piv] = b[piv], b[col]
        for row in range(col + 1, m):
            f = A[row][col] / A[col][col]
            for k in range(col, m):
                A[row][k] = A[row][k] - f * A[col][k]
            b[row] = b[row] - f * b[col]
    for col in range(m - 1, -1, -1):
        tmp = b[col]
        for k in range(col + 1, m):
            tmp = tmp - A[col][k] * b[k]
        b[col] = tmp / A[col][col]
    return True


def _barrier(x, c, r, n, d, mu):
    t = x[d]
    val = t / mu
    for i in range(n):
        s = r[i] + t
        if s <= 0.0:
            return 1e308
        g = s * s
        for k in range(d):
            dk = x[k] - c[i][k]
            g = g - dk * dk
        if g <= 0.0:
            return 1e308
        val = val - math.log(g)
    return val


def _scalar_dist(x, y, d):
    s = 0.0
    for k in range(d):
        t = x[k] - y[k]
        s = s + t * t
    return math.sqrt(s)


def certify(c, r, y0, tol):
    """Barrier-method decision of min_y max_i(|y - c_i| - r_i) <= 0 for one configuration."""
    n, d = len(r), len(y0)
    m = d + 1
    scale = r[0]
    for i in range(1, n):
        if r[i] > scale:
            scale = r[i]
    v = _scalar_dist(y0, c[0], d) - r[0]
    for i in range(1, n):
        w = _scalar_dist(y0, c[i], d) - r[i]
        if w > v:
            v = w
    x = list(y0) + [v + 0.5 * scale]
    mu = scale
    nu = 2.0 * n
    while True:
        for _ in range(50):
            if x[d] <= 0.0:
                return 1
            gr = [0.0] * m
            H = [[0.0] * m for _ in range(m)]
            gr[d] = 1.0 / mu
            for i in range(n):
                s = r[i] + x[d]
                g = s * s
                for k in range(d):
                    dk = x[k] - c[i][k]
                    g = g - dk * dk
                a = [-2.0 * (x[k] - c[i][k]) / g for k in range(d)] + [2.0 * s / g]
                for k in range(m):
                    gr[k] = gr[k] - a[k]
                    row = H[k]
                    for l in range(m):
                        row[l] = row[l] + a[k] * a[l]
                for k in range(d):
                    H[k][k] = H[k][k] + 2.0 / g
                H[d][d] = H[d][d] - 2.0 / g
            delta = [-gk for gk in gr]
            if not _solve(H, delta, m):
                break
            slope = 0.0
            for k in range(m):
                slope = slope + gr[k] * delta[k]
            if -slope <= 2e-10:
                break
            F0 = _barrier(x, c, r, n, d, mu)
            step = 1.0
            xn = None
            for _ls in range(60):
                cand = [x[k] + step * delta[k] for k in range(m)]
                if _barrier(cand, c, r, n, d, mu) <= F0 + 0.25 * step * slope:
                    xn = cand
                    break
                step = step * 0.5
            if xn is None:
                break
            x = xn
        if x[d] <= 0.0:
            return 1
        if x[d] - 2.0 * nu * mu > 0.0:
            return 0
        if nu * mu < 1e-13 * scale:
            return 1 if x[d] <= tol else 0
        mu = mu * 0.125


def balls_feasible(centers, radii, tol=1e-9, max_sweeps=500):
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    B, n, d = centers.shape
    if radii.shape[0] != n:
        raise ValueError("radii length must match the number of centers")
    out = np.zeros(B, dtype=np.uint8)
    if B == 0:
        return out
    if n == 1:
        out[:] = 1
        return out
    if d == 1:
        c = centers[:, :, 0]
        lo = c[:, 0] - radii[0]
        hi = c[:, 0] + radii[0]
        for i in range(1, n):
            lo = np.maximum(lo, c[:, i] - radii[i])
            hi = np.minimum(hi, c[:, i] + radii[i])
        out[:] = lo <= hi
        return out
    if n == 2:
        out[:] = _dist(centers[:, 0], centers[:, 1]) <= radii[0] + radii[1]
        return out

    alive = np.ones(B, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            alive &= _dist(centers[:, i], centers[:, j]) <= radii[i] + radii[j]
    idx = np.flatnonzero(alive)
    c = centers[idx]
    y = c[:, 0].copy()
    for i in range(1, n):
        y = y + c[:, i]
    y = y / n
    done = _max_violation(y, c, radii) <= tol
    out[idx[done]] = 1
    keep = ~done
    idx, c, y = idx[keep], c[keep], y[keep]

    undecided = []
    stall = 1e-14 * float(radii.max())
    yprev = y.copy()
    for _ in range(max_sweeps):
        if idx.size == 0:
            break
        for i in range(n):
            ci = c[:, i]
            dist = _dist(y, ci)
            mask = dist > radii[i]
            if mask.any():
                t = radii[i] / dist[mask]
                y[mask] = ci[mask] + (y[mask] - ci[mask]) * t[:, None]
        hit = _max_violation(y, c, radii) <= tol
        out[idx[hit]] = 1
        stalled = ~hit & (_dist(y, yprev) <= stall)
        undecided.extend(zip(idx[stalled], y[stalled]))
        keep = ~(hit | stalled)
        idx, c, y = idx[keep], c[keep], y[keep]
        yprev = y.copy()
    undecided.extend(zip(idx, y))

    r = radii.tolist()
    for b, yb in undecided:
        out[b] = certify(centers[b].tolist(), r, yb.tolist(), tol)
    return out


def pickands_count(xi, expo, a, n_grid, block=4096):
    xi = np.ascontiguousarray(xi, dtype=np.float64)
    expo = np.ascontiguousarray(expo, dtype=np.float64)
    t = np.arange(1, n_grid + 1) * a
    st = SQRT2 * t
    tt = t * t
    count = 0
    for start in range(0, xi.shape[0], block):
        x = xi[start:start + block]
        e = expo[start:start + block]
        zmin = st[None, :] * x[:, 0, None] - tt[None, :] + e[:, 0, None]
        for i in range(1, x.shape[1]):
            zmin = np.minimum(zmin, st[None, :] * x[:, i, None] - tt[None, :] + e[:, i, None])
        count += int(np.count_nonzero(zmin.max(axis=1) <= 0.0))
    return count
