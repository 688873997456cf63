# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: the compensated direct Hankel product and Horner evaluation."""
import numpy as np

cdef enum:
    LANES = 4
    BLOCK = 256


def hankel_direct(const double[::1] mu, const double[::1] a, Py_ssize_t n_out):
    """``out[n] = sum_k mu[n + k] * a[k]`` for ``n = 0..n_out``, compensated.

    Each output carries a TwoSum accumulator, so the error does not grow
    with ``K``.  Four outputs advance together to hide the latency of the
    dependent additions.
    """
    cdef Py_ssize_t K = a.shape[0]
    if mu.shape[0] < n_out + K:
        raise ValueError("moment array too short")
    out = np.empty(n_out + 1)
    cdef double[::1] o = out
    if K == 0:
        out[:] = 0.0
        return out
    cdef const double *m = &mu[0]
    cdef const double *w = &a[0]
    cdef const double *p
    cdef Py_ssize_t n, nb, k, n_main = (n_out + 1) - (n_out + 1) % LANES
    cdef double s0, s1, s2, s3, c0, c1, c2, c3, ak, x, t, z
    with nogil:
        for nb in range(n_main // LANES):
            n = nb * LANES
            p = m + n
            s0 = s1 = s2 = s3 = 0.0
            c0 = c1 = c2 = c3 = 0.0
            for k in range(K):
                ak = w[k]
                x = p[k] * ak
                t = s0 + x; z = t - s0; c0 += (s0 - (t - z)) + (x - z); s0 = t
                x = p[k + 1] * ak
                t = s1 + x; z = t - s1; c1 += (s1 - (t - z)) + (x - z); s1 = t
                x = p[k + 2] * ak
                t = s2 + x; z = t - s2; c2 += (s2 - (t - z)) + (x - z); s2 = t
                x = p[k + 3] * ak
                t = s3 + x; z = t - s3; c3 += (s3 - (t - z)) + (x - z); s3 = t
            o[n] = s0 + c0
            o[n + 1] = s1 + c1
            o[n + 2] = s2 + c2
            o[n + 3] = s3 + c3
        for n in range(n_main, n_out + 1):
            p = m + n
            s0 = 0.0
            c0 = 0.0
            for k in range(K):
                x = p[k] * w[k]
                t = s0 + x; z = t - s0; c0 += (s0 - (t - z)) + (x - z); s0 = t
            o[n] = s0 + c0
    return out


def horner(const double complex[::1] coeffs, const double complex[::1] z):
    """Evaluate ``sum_k coeffs[k] z**k`` at every point of ``z`` (Horner).

    Points are processed in blocks with the coefficient loop outside, so the
    inner loop runs over independent points in plain real arithmetic.
    """
    cdef Py_ssize_t K = coeffs.shape[0], m = z.shape[0], i, k, bi, b0, b1
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double zr[BLOCK]
    cdef double zi[BLOCK]
    cdef double ar[BLOCK]
    cdef double ai[BLOCK]
    cdef double cr, ci, tr
    with nogil:
        for bi in range((m + BLOCK - 1) // BLOCK):
            b0 = bi * BLOCK
            b1 = min(b0 + BLOCK, m)
            for i in range(b1 - b0):
                zr[i] = z[b0 + i].real
                zi[i] = z[b0 + i].imag
                ar[i] = 0.0
                ai[i] = 0.0
            for k in range(K - 1, -1, -1):
                cr = coeffs[k].real
                ci = coeffs[k].imag
                for i in range(b1 - b0):
                    tr = ar[i] * zr[i] - ai[i] * zi[i] + cr
                    ai[i] = ar[i] * zi[i] + ai[i] * zr[i] + ci
                    ar[i] = tr
            for i in range(b1 - b0):
                o[b0 + i] = ar[i] + 1j * ai[i]
    return out
