# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: banded Bernstein products and de Casteljau evaluation.

Semantics must match kernels/py_backend.py exactly (same operation order, so
results agree to the last ulp on the same inputs).
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc


def band_accumulate(double[::1] vec, double[:, ::1] band, double[::1] row,
                    double[::1] out, double scale=1.0):
    cdef Py_ssize_t q1 = vec.shape[0]
    cdef Py_ssize_t n1 = row.shape[0]
    cdef Py_ssize_t k, j
    cdef double ck
    if band.shape[0] < q1 or band.shape[1] < n1:
        raise ValueError("band table too small for operands")
    if out.shape[0] != q1 + n1 - 1:
        raise ValueError("output length must be q + n + 1")
    with nogil:
        for k in range(q1):
            ck = vec[k] * scale
            if ck != 0.0:
                for j in range(n1):
                    out[k + j] += ck * (band[k, j] * row[j])
    return np.asarray(out)


def decasteljau(coeffs, ts):
    c_arr = np.ascontiguousarray(coeffs, dtype=np.float64)
    t_in = np.asarray(ts, dtype=np.float64)
    scalar = t_in.ndim == 0
    t_arr = np.ascontiguousarray(np.atleast_1d(t_in))
    out = np.empty(t_arr.shape[0], dtype=np.float64)
    _decasteljau_impl(c_arr, t_arr, out)
    return out[0] if scalar else out


cdef int _decasteljau_impl(double[::1] coeffs, double[::1] ts, double[::1] out) except -1:
    cdef Py_ssize_t n = coeffs.shape[0]
    cdef Py_ssize_t npts = ts.shape[0]
    cdef Py_ssize_t p, r, i
    cdef double t, omt
    cdef double* beta = <double*> malloc(n * sizeof(double))
    if beta == NULL:
        raise MemoryError()
    try:
        with nogil:
            for p in range(npts):
                t = ts[p]
                omt = 1.0 - t
                for i in range(n):
                    beta[i] = coeffs[i]
                for r in range(1, n):
                    for i in range(n - r):
                        beta[i] = beta[i] * omt + beta[i + 1] * t
                out[p] = beta[0]
    finally:
        free(beta)
    return 0
