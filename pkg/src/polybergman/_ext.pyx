# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex log Gamma, digamma and Laguerre tables.

Same contract as ``_pure``; see that module for the conventions.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, floor, NAN, M_PI

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double complex csin(double complex)
    double complex ctan(double complex)

cdef double LANCZOS_G = 7.0
cdef double HALF_LOG_2PI = 0.91893853320467274178
cdef double[9] LANCZOS_COEF = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef double[7] DIGAMMA_ASYMPTOTIC = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
]


cdef inline bint _is_pole(double complex z) nogil:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == floor(z.real)


cdef inline double complex _loggamma_right(double complex z) nogil:
    cdef double complex zm = z - 1.0
    cdef double complex acc = LANCZOS_COEF[0]
    cdef double complex t
    cdef int i
    for i in range(1, 9):
        acc = acc + LANCZOS_COEF[i] / (zm + i)
    t = zm + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * clog(t) - t + clog(acc)


cdef inline double complex _loggamma(double complex z) nogil:
    if _is_pole(z):
        return NAN + 0j
    if z.real < 0.5:
        return clog(M_PI) - clog(csin(M_PI * z)) - _loggamma_right(1.0 - z)
    return _loggamma_right(z)


cdef inline double complex _digamma_right(double complex z) nogil:
    cdef double complex acc = 0.0
    cdef double complex inv2, series = 0.0
    cdef int i
    while z.real < 10.0:
        acc = acc - 1.0 / z
        z = z + 1.0
    inv2 = 1.0 / (z * z)
    for i in range(6, -1, -1):
        series = (series + DIGAMMA_ASYMPTOTIC[i]) * inv2
    return acc + clog(z) - 0.5 / z - series


cdef inline double complex _digamma(double complex z) nogil:
    if _is_pole(z):
        return NAN + 0j
    if z.real < 0.5:
        return _digamma_right(1.0 - z) - M_PI / ctan(M_PI * z)
    return _digamma_right(z)


def loggamma(z):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zf = np.ascontiguousarray(
        np.asarray(z, dtype=complex).ravel())
    cdef Py_ssize_t i, m = zf.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=complex)
    with nogil:
        for i in range(m):
            out[i] = _loggamma(zf[i])
    return out.reshape(np.shape(z))


def digamma(z):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zf = np.ascontiguousarray(
        np.asarray(z, dtype=complex).ravel())
    cdef Py_ssize_t i, m = zf.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=complex)
    with nogil:
        for i in range(m):
            out[i] = _digamma(zf[i])
    return out.reshape(np.shape(z))


def laguerre_table(int kmax, y):
    shape = np.shape(y)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] yf = np.ascontiguousarray(
        np.asarray(y, dtype=float).ravel())
    cdef Py_ssize_t i, m = yf.shape[0]
    cdef int k
    cdef double prev, cur, nxt, damp, yi, sign
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((kmax + 1, m))
    with nogil:
        for i in range(m):
            yi = yf[i]
            if yi < 0.0:
                for k in range(kmax + 1):
                    out[k, i] = 0.0
                continue
            damp = exp(-0.5 * yi)
            prev = 0.0
            cur = 1.0
            out[0, i] = damp
            sign = 1.0
            for k in range(kmax):
                nxt = ((2 * k + 1 - yi) * cur - k * prev) / (k + 1)
                prev = cur
                cur = nxt
                sign = -sign
                out[k + 1, i] = sign * damp * cur
    return out.reshape((kmax + 1,) + shape)
