# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops; ``conjprob._fallback`` mirrors them operation for operation."""
import numpy as np

from libc.math cimport sqrt, log, fabs
from libc.stdlib cimport malloc, free

cdef double SQRT2 = sqrt(2.0)


cdef inline double _dist(const double *x, const double *y, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, t
    cdef Py_ssize_t k
    for k in range(d):
        t = x[k] - y[k]
        s = s + t * t
    return sqrt(s)


cdef double _max_violation(const double *y, const double *c, const double *r,
                           Py_ssize_t n, Py_ssize_t d) noexcept nogil:
    cdef double v = _dist(y, c, d) - r[0], w
    cdef Py_ssize_t i
    for i in range(1, n):
        w = _dist(y, c + i * d, d) - r[i]
        if w > v:
            v = w
    return v


cdef int _solve(double *A, double *b, Py_ssize_t m) noexcept nogil:
    # Gaussian elimination with partial pivoting, in place; solution left in b
    cdef Py_ssize_t col, row, piv, k
    cdef double best, f, tmp
    for col in range(m):
        piv = col
        best = fabs(A[col * m + col])
        for row in range(col + 1, m):
            if fabs(A[row * m + col]) > best:
                best = fabs(A[row * m + col])
                piv = row
        if best == 0.0:
            return 0
        if piv != col:
            for k in range(m):
                tmp = A[col * m + k]
                A[col * m + k] = A[piv * m + k]
                A[piv * m + k] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        for row in range(col + 1, m):
            f = A[row * m + col] / A[col * m + col]
            for k in range(col, m):
                A[row * m + k] = A[row * m + k] - f * A[col * m + k]
            b[row] = b[row] - f * b[col]
    for col in range(m - 1, -1, -1):
        tmp = b[col]
        for k in range(col + 1, m):
            tmp = tmp - A[col * m + k] * b[k]
        b[col] = tmp / A[col * m + col]
    return 1


cdef double _barrier(const double *x, const double *c, const double *r, Py_ssize_t n,
                     Py_ssize_t d, double mu) noexcept nogil:
    # t / mu - sum log((r_i + t)^2 - |y - c_i|^2); +inf outside the interior
    cdef double t = x[d], s, g, val = t / mu, dk
    cdef Py_ssize_t i, k
    for i in range(n):
        s = r[i] + t
        if s <= 0.0:
            return 1e308
        g = s * s
        for k in range(d):
            dk = x[k] - c[i * d + k]
            g = g - dk * dk
        if g <= 0.0:
            return 1e308
        val = val - log(g)
    return val


cdef unsigned char _certify(const double *c, const double *r, Py_ssize_t n, Py_ssize_t d,
                            const double *y0, double tol, double *work) noexcept nogil:
    # decide min_y max_i (|y - c_i| - r_i) <= 0 by a log-barrier path on
    # min t s.t. |y - c_i| <= r_i + t; t bounds the optimum from above and
    # t - nu mu (nu = 2n) from below at a centred point
    cdef Py_ssize_t m = d + 1, i, k, l, it, ls
    cdef double *x = work
    cdef double *gr = work + m
    cdef double *H = work + 2 * m
    cdef double *delta = work + 2 * m + m * m
    cdef double *xn = work + 3 * m + m * m
    cdef double *a = work + 4 * m + m * m
    cdef double scale = r[0], mu, nu = 2.0 * n, s, g, dk, lam2, F0, Fn, step, slope
    cdef bint accepted
    for i in range(1, n):
        if r[i] > scale:
            scale = r[i]
    for k in range(d):
        x[k] = y0[k]
    x[d] = _max_violation(y0, c, r, n, d) + 0.5 * scale
    mu = scale
    while True:
        for it in range(50):
            if x[d] <= 0.0:
                return 1
            for k in range(m):
                gr[k] = 0.0
                for l in range(m):
                    H[k * m + l] = 0.0
            gr[d] = 1.0 / mu
            for i in range(n):
                s = r[i] + x[d]
                g = s * s
                for k in range(d):
                    dk = x[k] - c[i * d + k]
                    g = g - dk * dk
                for k in range(d):
                    a[k] = -2.0 * (x[k] - c[i * d + k]) / g
                a[d] = 2.0 * s / g
                for k in range(m):
                    gr[k] = gr[k] - a[k]
                    for l in range(m):
                        H[k * m + l] = H[k * m + l] + a[k] * a[l]
                for k in range(d):
                    H[k * m + k] = H[k * m + k] + 2.0 / g
                H[d * m + d] = H[d * m + d] - 2.0 / g
            for k in range(m):
                delta[k] = -gr[k]
            if not _solve(H, delta, m):
                break
            slope = 0.0
            for k in range(m):
                slope = slope + gr[k] * delta[k]
            lam2 = -slope
            if lam2 <= 2e-10:
                break
            F0 = _barrier(x, c, r, n, d, mu)
            step = 1.0
            accepted = False
            for ls in range(60):
                for k in range(m):
                    xn[k] = x[k] + step * delta[k]
                Fn = _barrier(xn, c, r, n, d, mu)
                if Fn <= F0 + 0.25 * step * slope:
                    accepted = True
                    break
                step = step * 0.5
            if not accepted:
                break
            for k in range(m):
                x[k] = xn[k]
        if x[d] <= 0.0:
            return 1
        if x[d] - 2.0 * nu * mu > 0.0:
            return 0
        if nu * mu < 1e-13 * scale:
            return 1 if x[d] <= tol else 0
        mu = mu * 0.125


cdef unsigned char _feasible_one(const double *c, const double *r, Py_ssize_t n,
                                 Py_ssize_t d, double tol, int max_sweeps,
                                 double stall, double *y, double *yprev,
                                 double *work) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double lo, hi, dist, v, move, t
    if n == 1:
        return 1
    if d == 1:
        lo = c[0] - r[0]
        hi = c[0] + r[0]
        for i in range(1, n):
            if c[i] - r[i] > lo:
                lo = c[i] - r[i]
            if c[i] + r[i] < hi:
                hi = c[i] + r[i]
        return 1 if lo <= hi else 0
    if n == 2:
        return 1 if _dist(c, c + d, d) <= r[0] + r[1] else 0
    # pairwise separation is a necessary condition
    for i in range(n):
        for j in range(i + 1, n):
            if _dist(c + i * d, c + j * d, d) > r[i] + r[j]:
                return 0
    for k in range(d):
        t = c[k]
        for i in range(1, n):
            t = t + c[i * d + k]
        y[k] = t / n
    if _max_violation(y, c, r, n, d) <= tol:
        return 1
    for k in range(d):
        yprev[k] = y[k]
    for _ in range(max_sweeps):
        for i in range(n):
            dist = _dist(y, c + i * d, d)
            if dist > r[i]:
                t = r[i] / dist
                for k in range(d):
                    y[k] = c[i * d + k] + (y[k] - c[i * d + k]) * t
        if _max_violation(y, c, r, n, d) <= tol:
            return 1
        move = _dist(y, yprev, d)
        if move <= stall:
            break
        for k in range(d):
            yprev[k] = y[k]
    return _certify(c, r, n, d, y, tol, work)


def balls_feasible(double[:, :, ::1] centers, double[::1] radii, double tol=1e-9,
                   int max_sweeps=500):
    """Common-point test for each of ``centers.shape[0]`` ball configurations."""
    cdef Py_ssize_t B = centers.shape[0], n = centers.shape[1], d = centers.shape[2]
    cdef Py_ssize_t b, i, m = d + 1
    if radii.shape[0] != n:
        raise ValueError("radii length must match the number of centers")
    out = np.zeros(B, dtype=np.uint8)
    if B == 0:
        return out
    cdef unsigned char[::1] res = out
    cdef double scale = 0.0
    for i in range(n):
        if radii[i] > scale:
            scale = radii[i]
    cdef double stall = 1e-14 * scale
    cdef double *buf = <double *> malloc((2 * m + 5 * m + m * m) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for b in range(B):
                res[b] = _feasible_one(&centers[b, 0, 0], &radii[0], n, d, tol,
                                       max_sweeps, stall, buf, buf + m, buf + 2 * m)
    finally:
        free(buf)
    return out


def pickands_count(double[:, ::1] xi, double[:, ::1] expo, double a, Py_ssize_t n_grid):
    """Number of rows whose grid maximum of min_i(sqrt2 t xi_i - t^2 + E_i) is <= 0."""
    cdef Py_ssize_t B = xi.shape[0], n = xi.shape[1]
    cdef Py_ssize_t b, k, i
    cdef long long count = 0
    cdef double t, st, tt, z, zmin
    cdef bint ok
    with nogil:
        for b in range(B):
            ok = True
            for k in range(1, n_grid + 1):
                t = k * a
                st = SQRT2 * t
                tt = t * t
                zmin = st * xi[b, 0] - tt + expo[b, 0]
                for i in range(1, n):
                    z = st * xi[b, i] - tt + expo[b, i]
                    if z < zmin:
                        zmin = z
                if zmin > 0.0:
                    ok = False
                    break
            if ok:
                count += 1
    return count
