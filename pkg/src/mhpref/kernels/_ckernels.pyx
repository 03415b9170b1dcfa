# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled valuation kernels.

Same functions and algorithms as _pykernels; the golden-section refinement
runs per row without temporaries, which is where the speedup comes from.
"""

import numpy as np

from libc.math cimport exp, sqrt

IMPL = "compiled"

cdef double INVPHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _clip01(double t) nogil:
    if t < 0.0:
        return 0.0
    if t > 1.0:
        return 1.0
    return t


def quad_conj(F, double alpha, double beta):
    cdef double[:, ::1] Fv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(F, dtype=np.float64))
    )
    cdef Py_ssize_t n = Fv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double d, t
    with nogil:
        for i in range(n):
            d = Fv[i, 1] - Fv[i, 0]
            if alpha > 0.0:
                t = _clip01(beta + d / (2.0 * alpha))
            else:
                t = 1.0 if d >= 0.0 else 0.0
            ov[i] = Fv[i, 0] + d * t - alpha * (t - beta) * (t - beta)
    return out


def quad_conj_arg(F, double alpha, double beta):
    cdef double[:, ::1] Fv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(F, dtype=np.float64))
    )
    cdef Py_ssize_t n = Fv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double d
    with nogil:
        for i in range(n):
            d = Fv[i, 1] - Fv[i, 0]
            if alpha > 0.0:
                ov[i] = _clip01(beta + d / (2.0 * alpha))
            else:
                ov[i] = 1.0 if d >= 0.0 else 0.0
    return out


def grid_conj(F, P, v):
    cdef double[:, ::1] Fv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(F, dtype=np.float64))
    )
    cdef double[:, ::1] Pv = np.ascontiguousarray(np.asarray(P, dtype=np.float64))
    cdef double[::1] vv = np.ascontiguousarray(np.asarray(v, dtype=np.float64))
    cdef Py_ssize_t n = Fv.shape[0], k = Pv.shape[0], m = Fv.shape[1], i, j, s
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double best, score
    with nogil:
        for i in range(n):
            best = -1e308
            for j in range(k):
                score = -vv[j]
                for s in range(m):
                    score += Fv[i, s] * Pv[j, s]
                if score > best:
                    best = score
            ov[i] = best
    return out


cdef inline double _obj(double t, double cost, double lam) nogil:
    cdef double e = -t
    if e > 700.0:
        e = 700.0
    return t - cost * (1.0 + lam * exp(e))


cdef inline double _quad_cost(double p, double alpha, double beta) nogil:
    return alpha * (p - beta) * (p - beta)


cdef inline double _pwl_cost(double p, double[::1] kt, double[::1] kc) nogil:
    cdef Py_ssize_t n = kt.shape[0], lo = 0, hi = n - 1, mid
    if p <= kt[0]:
        return kc[0]
    if p >= kt[n - 1]:
        return kc[n - 1]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if kt[mid] <= p:
            lo = mid
        else:
            hi = mid
    return kc[lo] + (kc[hi] - kc[lo]) * (p - kt[lo]) / (kt[hi] - kt[lo])


cdef void _income_rows(
    double[:, ::1] Fv,
    double[::1] ov,
    double lam,
    bint quad,
    double alpha,
    double beta,
    double[::1] kt,
    double[::1] kc,
    double lo_hull,
    double hi_hull,
    int n_scan,
    int n_iter,
) nogil:
    cdef Py_ssize_t n = Fv.shape[0], i, j, best_j
    cdef double f0, d, p, step, best, cur, a, b, x1, x2, g1, g2, mid, vmid
    cdef double cost
    step = (hi_hull - lo_hull) / (n_scan - 1)
    for i in range(n):
        f0 = Fv[i, 0]
        d = Fv[i, 1] - Fv[i, 0]
        best = -1e308
        best_j = 0
        for j in range(n_scan):
            p = lo_hull + step * j
            cost = _quad_cost(p, alpha, beta) if quad else _pwl_cost(p, kt, kc)
            cur = _obj(f0 + d * p, cost, lam)
            if cur > best:
                best = cur
                best_j = j
        a = lo_hull + step * (best_j - 1 if best_j > 0 else 0)
        b = lo_hull + step * (best_j + 1 if best_j < n_scan - 1 else n_scan - 1)

        x1 = b - INVPHI * (b - a)
        x2 = a + INVPHI * (b - a)
        cost = _quad_cost(x1, alpha, beta) if quad else _pwl_cost(x1, kt, kc)
        g1 = _obj(f0 + d * x1, cost, lam)
        cost = _quad_cost(x2, alpha, beta) if quad else _pwl_cost(x2, kt, kc)
        g2 = _obj(f0 + d * x2, cost, lam)
        for j in range(n_iter):
            if g1 >= g2:
                b = x2
                x1 = b - INVPHI * (b - a)
                x2 = a + INVPHI * (b - a)
                g2 = g1
                cost = _quad_cost(x1, alpha, beta) if quad else _pwl_cost(x1, kt, kc)
                g1 = _obj(f0 + d * x1, cost, lam)
            else:
                a = x1
                x1 = b - INVPHI * (b - a)
                x2 = a + INVPHI * (b - a)
                g1 = g2
                cost = _quad_cost(x2, alpha, beta) if quad else _pwl_cost(x2, kt, kc)
                g2 = _obj(f0 + d * x2, cost, lam)
        mid = 0.5 * (a + b)
        cost = _quad_cost(mid, alpha, beta) if quad else _pwl_cost(mid, kt, kc)
        vmid = _obj(f0 + d * mid, cost, lam)
        if g1 > vmid:
            vmid = g1
        if g2 > vmid:
            vmid = g2
        ov[i] = vmid


def income2_value_quad(F, double lam, double alpha, double beta,
                       int n_scan=65, int n_iter=52):
    cdef double[:, ::1] Fv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(F, dtype=np.float64))
    )
    out = np.empty(Fv.shape[0])
    cdef double[::1] ov = out
    cdef double[::1] dummy = np.zeros(2)
    with nogil:
        _income_rows(Fv, ov, lam, True, alpha, beta, dummy, dummy, 0.0, 1.0,
                     n_scan, n_iter)
    return out


def income2_value_pwl(F, double lam, knots_t, knots_c,
                      int n_scan=65, int n_iter=52):
    cdef double[:, ::1] Fv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(F, dtype=np.float64))
    )
    cdef double[::1] kt = np.ascontiguousarray(np.asarray(knots_t, dtype=np.float64))
    cdef double[::1] kc = np.ascontiguousarray(np.asarray(knots_c, dtype=np.float64))
    out = np.empty(Fv.shape[0])
    cdef double[::1] ov = out
    with nogil:
        _income_rows(Fv, ov, lam, False, 0.0, 0.0, kt, kc, kt[0], kt[kt.shape[0] - 1],
                     n_scan, n_iter)
    return out
