# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled recursion kernels; see ``_kernels_py`` for the reference versions."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, log

cnp.import_array()

cdef enum:
    RENORM_EVERY = 64


def forward_psi(double a, double w, long two_k, long n_max):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_max + 1)
    cdef double prev = 0.0, cur = 1.0, s_prev = 0.0, s_n, nxt
    cdef long n
    out[0] = 1.0
    for n in range(n_max):
        s_n = sqrt((n + 1.0) * (two_k + n))
        nxt = ((a * n - w) * cur - s_prev * prev) / s_n
        out[n + 1] = nxt
        prev = cur
        cur = nxt
        s_prev = s_n
    return out


def backward_minimal(double a, double w, long two_k, long n_from, long n_to, long n_start):
    cdef long width = n_to - n_from + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(width)
    cdef double nxt = 0.0, cur = 1.0, prev, s_n, s_m, scale
    cdef double log_scale = 0.0
    cdef long n, idx, i, lo
    cdef long steps = 0
    if n_start <= n_to:
        out[n_start - n_from] = cur
    for n in range(n_start, n_from, -1):
        s_n = sqrt((n + 1.0) * (two_k + n))
        s_m = sqrt(n * (two_k + n - 1.0))
        prev = ((a * n - w) * cur - s_n * nxt) / s_m
        nxt = cur
        cur = prev
        idx = n - 1 - n_from
        if idx < width:
            out[idx] = cur
        steps += 1
        if steps % RENORM_EVERY == 0:
            scale = fabs(cur)
            if scale > 0.0:
                cur /= scale
                nxt /= scale
                log_scale += log(scale)
                lo = idx if idx > 0 else 0
                for i in range(lo, width):
                    out[i] /= scale
    return out, log_scale


def su2_forward(double a, double z, long two_j, long n_max):
    cdef double j = 0.5 * two_j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_max + 1)
    cdef double prev = 0.0, cur = 1.0, nxt
    cdef long n
    out[0] = 1.0
    for n in range(n_max):
        nxt = -((a * (n - j) + z) * cur + (two_j - n + 1.0) * prev) / (n + 1.0)
        out[n + 1] = nxt
        prev = cur
        cur = nxt
    return out


cdef long _sturm(double[::1] diag, double[::1] off, double x) nogil:
    cdef long count = 0, i
    cdef long n = diag.shape[0]
    cdef double q = 1.0
    for i in range(n):
        if i == 0:
            q = diag[0] - x
        else:
            if q == 0.0:
                q = 1e-300
            q = diag[i] - x - off[i - 1] * off[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(diag, off, double x):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off, dtype=np.float64)
    return _sturm(d, e, x)


def bisect_eigenvalue(diag, off, long index, double lo, double hi, double tol):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off, dtype=np.float64)
    cdef double mid
    with nogil:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _sturm(d, e, mid) > index:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)
