"""Numpy kernels: weighted power sums, plus fallbacks for ``_kernels.pyx``."""
import numpy as np

_BLOCK = 512


def power_sums(log_t, weights, n_max):
    """``out[n] = sum_i weights[i] * exp(n * log_t[i])`` for ``n = 0..n_max``.

    Blocked as a matrix product: within a block of ``B`` consecutive
    exponents the powers are a fixed ``m x B`` table, and each block start
    rescales the weights.
    """
    log_t = np.ascontiguousarray(log_t, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if log_t.shape != weights.shape:
        raise ValueError("log_t and weights differ in length")
    n_total = n_max + 1
    block = min(_BLOCK, n_total)
    n_blocks = -(-n_total // block)
    with np.errstate(under="ignore"):
        table = np.exp(np.outer(log_t, np.arange(block)))
        starts = np.arange(n_blocks) * float(block)
        scaled = weights[None, :] * np.exp(starts[:, None] * log_t[None, :])
    out = (scaled @ table).ravel()
    return out[:n_total]


def hankel_direct(mu, a, n_out):
    """``out[n] = sum_k mu[n + k] * a[k]`` for ``n = 0..n_out``, compensated.

    Vectorized over ``n`` with one TwoSum accumulator per output, matching
    the compiled kernel to rounding.
    """
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    a = np.ascontiguousarray(a, dtype=np.float64)
    K = a.shape[0]
    if mu.shape[0] < n_out + K:
        raise ValueError("moment array too short")
    n = n_out + 1
    s = np.zeros(n)
    c = np.zeros(n)
    x = np.empty(n)
    t = np.empty(n)
    z = np.empty(n)
    for k in range(K):
        np.multiply(mu[k : k + n], a[k], out=x)
        np.add(s, x, out=t)
        np.subtract(t, s, out=z)
        # c += (s - (t - z)) + (x - z)
        np.subtract(x, z, out=x)
        np.subtract(t, z, out=z)
        np.subtract(s, z, out=z)
        c += z
        c += x
        s, t = t, s
    return s + c


def horner(coeffs, z):
    """Evaluate ``sum_k coeffs[k] z**k`` at every point of ``z`` (Horner)."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc
