# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; drop-in twin of ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY, isfinite

cnp.import_array()

ctypedef double complex cplx

cdef int STATUS_OK = 0
cdef int STATUS_LEFT_TRUST = 1
cdef int STATUS_DERIVATIVE_VANISHES = 2
cdef int STATUS_NO_CONVERGENCE = 3


cdef inline double cabs_(cplx z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline void _horner1(const cplx[::1] c, cplx z, cplx* p, cplx* dp, double* scale) noexcept nogil:
    cdef Py_ssize_t k
    cdef cplx pv = 0, dv = 0
    cdef double s = 0, az = cabs_(z)
    for k in range(c.shape[0] - 1, -1, -1):
        dv = dv * z + pv
        pv = pv * z + c[k]
        s = s * az + cabs_(c[k])
    p[0] = pv
    dp[0] = dv
    scale[0] = s


cdef inline double _dscale(const cplx[::1] c, double az) noexcept nogil:
    cdef Py_ssize_t k
    cdef double s = 0
    for k in range(c.shape[0] - 1, 0, -1):
        s = s * az + k * cabs_(c[k])
    return s


def horner(coeffs, zs):
    cdef const cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const cplx[::1] z = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = z.shape[0], i
    p_out = np.empty(n, dtype=np.complex128)
    dp_out = np.empty(n, dtype=np.complex128)
    s_out = np.empty(n, dtype=np.float64)
    cdef cplx[::1] pv = p_out
    cdef cplx[::1] dv = dp_out
    cdef double[::1] sv = s_out
    with nogil:
        for i in range(n):
            _horner1(c, z[i], &pv[i], &dv[i], &sv[i])
    return p_out, dp_out, s_out


def aberth(coeffs, z, int max_sweeps, double tol):
    cdef const cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    out = np.array(z, dtype=np.complex128, copy=True)
    cdef cplx[::1] r = out
    cdef Py_ssize_t n = r.shape[0], i, j
    cdef int sweep
    cdef cplx p, dp, s, ratio, w
    cdef double scale, wmax
    cdef bint all_small
    cdef int finished = -1
    if n == 0:
        return out, 0
    with nogil:
        for sweep in range(1, max_sweeps + 1):
            all_small = True
            for i in range(n):
                _horner1(c, r[i], &p, &dp, &scale)
                if cabs_(p) <= 4e-16 * scale:
                    continue
                s = 0
                for j in range(n):
                    if j != i:
                        s = s + 1.0 / (r[i] - r[j])
                ratio = p / dp
                w = ratio / (1.0 - ratio * s)
                if not (isfinite(w.real) and isfinite(w.imag)):
                    continue
                # Gauss-Seidel style update: later roots see the new value
                r[i] = r[i] - w
                if cabs_(w) > tol * (1.0 if cabs_(r[i]) < 1.0 else cabs_(r[i])):
                    all_small = False
            if all_small:
                finished = sweep
                break
    return out, finished


def newton_batch(coeffs, z0, trust, int max_steps, double tol):
    cdef const cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const cplx[::1] start = np.ascontiguousarray(z0, dtype=np.complex128)
    cdef Py_ssize_t n = start.shape[0], i
    cdef const double[::1] tr = np.ascontiguousarray(
        np.broadcast_to(np.asarray(trust, dtype=np.float64), (n,)))
    out = np.array(start, dtype=np.complex128, copy=True)
    status_out = np.full(n, STATUS_NO_CONVERGENCE, dtype=np.int64)
    cdef cplx[::1] z = out
    cdef long long[::1] st = status_out
    cdef int it
    cdef cplx p, dp, step
    cdef double scale, az
    with nogil:
        for i in range(n):
            for it in range(max_steps):
                _horner1(c, z[i], &p, &dp, &scale)
                az = cabs_(z[i])
                if cabs_(p) <= 4e-16 * scale:
                    # at the rounding floor of the evaluation: no further progress possible
                    st[i] = STATUS_OK if cabs_(z[i] - start[i]) <= tr[i] else STATUS_LEFT_TRUST
                    break
                if cabs_(dp) <= 1e-14 * _dscale(c, az):
                    st[i] = STATUS_DERIVATIVE_VANISHES
                    break
                if cabs_(dp) == 0:
                    step = 0
                else:
                    step = p / dp
                z[i] = z[i] - step
                if cabs_(z[i] - start[i]) > tr[i]:
                    st[i] = STATUS_LEFT_TRUST
                    break
                az = cabs_(z[i])
                if cabs_(step) <= tol * (1.0 if az < 1.0 else az):
                    st[i] = STATUS_OK
                    break
    return out, status_out


def min_pairwise_distance(z):
    cdef const cplx[::1] r = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = r.shape[0], i, j
    cdef double best = INFINITY, d
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = cabs_(r[i] - r[j])
                if d < best:
                    best = d
    return best


def nearest_distances(z):
    cdef const cplx[::1] r = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = r.shape[0], i, j
    out = np.full(n, np.inf)
    cdef double[::1] o = out
    cdef double d
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = cabs_(r[i] - r[j])
                if d < o[i]:
                    o[i] = d
                if d < o[j]:
                    o[j] = d
    return out


def poly_from_roots(roots):
    cdef const cplx[::1] r = np.ascontiguousarray(roots, dtype=np.complex128)
    cdef Py_ssize_t m = r.shape[0], i, k
    out = np.zeros(m + 1, dtype=np.complex128)
    cdef cplx[::1] c = out
    c[0] = 1
    with nogil:
        for i in range(m):
            c[i + 1] = c[i]
            for k in range(i, 0, -1):
                c[k] = c[k - 1] - r[i] * c[k]
            c[0] = -r[i] * c[0]
    return out
