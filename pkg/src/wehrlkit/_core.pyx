# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the density and entropy integrands.

Mirrors ``_core_py`` one-to-one; the import shim in ``_kernels`` picks this
module when it was built.
"""
import numpy as np
from libc.math cimport exp, log

cdef double XLOGX_FLOOR = 1e-300


cdef inline double _laguerre1(int n, double alpha, double x) nogil:
    cdef double prev = 1.0, cur, nxt
    cdef int k
    if n == 0:
        return 1.0
    cur = 1.0 + alpha - x
    for k in range(1, n):
        nxt = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
        prev = cur
        cur = nxt
    return cur


def laguerre(int n, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _laguerre1(n, alpha, xv[i])
    return out.reshape(np.shape(x))


def hermite(int m, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef int k
    cdef double prev, cur, nxt, t
    with nogil:
        for i in range(xv.shape[0]):
            t = xv[i]
            prev = 1.0
            cur = 2.0 * t
            if m == 0:
                cur = 1.0
            for k in range(1, m):
                nxt = 2.0 * t * cur - 2.0 * k * prev
                prev = cur
                cur = nxt
            ov[i] = cur
    return out.reshape(np.shape(x))


def rakhmanov(int n, int alpha, double log_pref, lam):
    cdef double[::1] lv = np.ascontiguousarray(lam, dtype=np.float64).ravel()
    out = np.empty(lv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double t, lag, expo
    with nogil:
        for i in range(lv.shape[0]):
            t = lv[i]
            lag = _laguerre1(n, alpha, t)
            if alpha == 0:
                expo = log_pref - t
            elif t > 0.0:
                expo = log_pref - t + alpha * log(t)
            else:
                ov[i] = 0.0
                continue
            ov[i] = exp(expo) * lag * lag
    return out.reshape(np.shape(lam))


def exp_poly(coeffs, double rate, lam):
    cdef double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[::1] lv = np.ascontiguousarray(lam, dtype=np.float64).ravel()
    out = np.empty(lv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, k
    cdef Py_ssize_t nc = cv.shape[0]
    cdef double t, acc
    with nogil:
        for i in range(lv.shape[0]):
            t = lv[i]
            acc = 0.0
            for k in range(nc - 1, -1, -1):
                acc = acc * t + cv[k]
            ov[i] = exp(-rate * t) * acc
    return out.reshape(np.shape(lam))


def neg_xlogx(q):
    cdef double[::1] qv = np.ascontiguousarray(q, dtype=np.float64).ravel()
    out = np.empty(qv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double t
    with nogil:
        for i in range(qv.shape[0]):
            t = qv[i]
            ov[i] = -t * log(t) if t > XLOGX_FLOOR else 0.0
    return out.reshape(np.shape(q))
