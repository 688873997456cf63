"""The Hankel operator on Taylor coefficients, its integral form, and disc identities.

For a measure with moments ``mu_n`` the coefficient-side operator sends
``f = sum a_k z^k`` to ``sum_n (sum_k mu_{n+k} a_k) z^n``; the integral form is
``int f(t) / (1 - t z) dmu(t)``.  The identity checks compare disc integrals
computed by quadrature with their one-dimensional reductions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import signal, stats

from . import _backend
from .measure import Measure, MomentTable, measure_nodes, moment_range, moments_upto
from .quadrature import disc_rule, gauss_legendre
from .spaces import KernelFunction, TaylorPolynomial, derivative, evaluate

__all__ = [
    "HankelApplication",
    "DivergenceReport",
    "hankel_apply",
    "integral_apply",
    "integral_apply_derivative",
    "agreement_check",
    "divergence_probe",
    "bergman_reproduce_check",
    "pairing_identity_check",
    "radial_identity_checks",
]

# above this many multiply-adds the product goes through an FFT correlation
DIRECT_LIMIT = 20_000_000


@dataclass(frozen=True, eq=False)
class HankelApplication:
    """Output of :func:`hankel_apply`.

    ``residual_bound`` is ``mu_{N_out+1} * sum |a_k|``, which bounds every
    omitted output coefficient.  ``method`` is "direct" or "fft".
    """

    input: TaylorPolynomial = field(repr=False)
    moments: MomentTable = field(repr=False)
    output: TaylorPolynomial = field(repr=False)
    residual_bound: float
    method: str

    @property
    def n_out(self) -> int:
        return self.output.degree


def _apply_real(mu: np.ndarray, a: np.ndarray, n_out: int, method: str) -> np.ndarray:
    K = a.size - 1
    if method == "direct":
        return _backend.hankel_direct(np.ascontiguousarray(mu[: n_out + K + 1]), np.ascontiguousarray(a), n_out)
    return signal.fftconvolve(mu[: n_out + K + 1], a[::-1], mode="valid")


def hankel_apply(mt: MomentTable, f: TaylorPolynomial, n_out: int, method: str | None = None) -> HankelApplication:
    """Coefficients ``b_n = sum_{k=0}^{K} mu_{n+k} a_k`` for ``n = 0..n_out``.

    Small products are summed directly with compensation; large ones use an
    FFT correlation, whose errors are absolute (about ``1e-16 * max|b|``).
    """
    n_out = int(n_out)
    if n_out < 0:
        raise ValueError("n_out must be non-negative")
    K = f.degree
    need = n_out + K
    if mt.max_index < max(need, n_out + 1):
        raise ValueError(f"moment table reaches index {mt.max_index}; index {max(need, n_out + 1)} is required")
    if method is None:
        method = "direct" if (n_out + 1) * (K + 1) <= DIRECT_LIMIT else "fft"
    if method not in ("direct", "fft"):
        raise ValueError(f"unknown method {method!r}")
    mu = mt.values
    a = f.coeffs
    out = _apply_real(mu, np.ascontiguousarray(a.real), n_out, method).astype(np.complex128)
    if np.any(a.imag):
        out = out + 1j * _apply_real(mu, np.ascontiguousarray(a.imag), n_out, method)
    bound = float(mu[n_out + 1] * np.sum(np.abs(a)))
    return HankelApplication(f, mt, TaylorPolynomial(out), bound, method)


def _values_at(f, t):
    if isinstance(f, KernelFunction):
        return f(t)
    return evaluate(f, t)


def integral_apply(m: Measure, f, z):
    """``int f(t) / (1 - t z) dmu(t)`` for ``|z| < 1`` (scalar or array ``z``).

    Exact for atomic measures; densities use the dyadic-shell nodes.
    """
    z_arr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z_arr) >= 1.0):
        raise ValueError("integral operator is evaluated for |z| < 1 only")
    nodes = measure_nodes(m)
    t = nodes.t
    wf = nodes.weights * _values_at(f, t)
    flat = z_arr.ravel()
    out = (wf[None, :] / (1.0 - flat[:, None] * t[None, :])).sum(axis=1)
    return complex(out[0]) if z_arr.ndim == 0 else out.reshape(z_arr.shape)


def integral_apply_derivative(m: Measure, f, z):
    """Derivative of the integral operator: ``int t f(t) / (1 - t z)^2 dmu(t)``."""
    z_arr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z_arr) >= 1.0):
        raise ValueError("integral operator is evaluated for |z| < 1 only")
    nodes = measure_nodes(m)
    t = nodes.t
    wf = nodes.weights * t * _values_at(f, t)
    flat = z_arr.ravel()
    out = np.empty(flat.size, dtype=np.complex128)
    step = max(1, (1 << 21) // max(t.size, 1))
    for s in range(0, flat.size, step):
        zz = flat[s:s + step]
        out[s:s + step] = (wf[None, :] / (1.0 - zz[:, None] * t[None, :]) ** 2).sum(axis=1)
    return complex(out[0]) if z_arr.ndim == 0 else out.reshape(z_arr.shape)


def agreement_check(m: Measure, f: TaylorPolynomial, zs, tol: float = 1e-10) -> float:
    """Largest ``|H f(z) - I f(z)| / (1 + |I f(z)|)`` over ``zs`` (``|z| <= 0.9``).

    The output degree is the smallest ``N`` whose tail bound
    ``mu_{N+1} sum|a_k| r^{N+1} / (1 - r)`` is below ``tol``, ``r = max |z|``.
    """
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    r = float(np.max(np.abs(zs)))
    if r > 0.9 + 1e-15:
        raise ValueError("agreement grid must lie in |z| <= 0.9")
    a_sum = float(np.sum(np.abs(f.coeffs)))
    N = 16
    while True:
        mu_next = moments_upto(m, N + 1)[N + 1]
        if a_sum * mu_next * r ** (N + 1) / (1.0 - r) < tol or r == 0.0:
            break
        N *= 2
    mt = moments_upto(m, N + f.degree + 1)
    app = hankel_apply(mt, f, N)
    series = evaluate(app.output, zs)
    integral = integral_apply(m, f, zs)
    return float(np.max(np.abs(series - integral) / (1.0 + np.abs(integral))))


# ---------------------------------------------------------------------------
# divergence of sum mu_n a_n

@dataclass(frozen=True)
class DivergenceReport:
    """Partial sums ``S_{2^j}`` of ``sum mu_n a_n`` and the fitted block model.

    ``increments[i]`` is ``S_{2^(j+1)} - S_{2^j}`` for ``j = fit_levels[i]``;
    ``c`` is the least-squares coefficient of ``c / j`` through the origin,
    ``c_lower`` its one-sided 95% lower confidence limit, ``exponent`` the
    log-log decay rate of the increments in ``j`` and ``geometric_slope`` the
    slope of ``log(increment)`` against ``j``.  ``power_law_better`` records
    whether ``log(increment)`` is fitted more closely as linear in ``log j``
    than as linear in ``j``.
    """

    verdict: str
    levels: np.ndarray
    partial_sums: np.ndarray
    fit_levels: np.ndarray
    increments: np.ndarray
    c: float
    c_lower: float
    exponent: float
    geometric_slope: float
    power_law_better: bool


DIVERGENCE_FIT_FROM = 10
DIVERGENCE_MAX_EXPONENT = 1.25


def divergence_probe(m: Measure, coefficients, J: int = 24, *, chunk: int = 1 << 20) -> DivergenceReport:
    """Classify ``sum_n mu_n a_n`` as convergent or divergent from dyadic partial sums.

    ``coefficients`` maps an integer array ``n`` to ``a_n >= 0``.  Divergent
    means: the block increments over ``j = 10..J-1`` fit ``c / j`` with ``c > 0``
    at 95% confidence, decay no faster than ``j^-1.25``, and follow a power of
    ``j`` more closely than a geometric sequence in ``j``.  Anything else,
    including increments that vanish, is convergent.
    """
    if J < DIVERGENCE_FIT_FROM + 3:
        raise ValueError(f"need J >= {DIVERGENCE_FIT_FROM + 3}")
    levels = np.arange(J + 1)
    sums = np.empty(J + 1)
    total = 0.0
    prev = 0
    for j in levels:
        stop = (1 << int(j)) + 1  # S_N includes n = N
        for s in range(prev, stop, chunk):
            e = min(stop, s + chunk)
            n = np.arange(s, e)
            a = np.asarray(coefficients(n), dtype=float)
            if np.any(a < 0):
                raise ValueError("divergence probe needs non-negative coefficients")
            total += math.fsum(moment_range(m, s, e) * a)
        prev = stop
        sums[j] = total
    fit_levels = np.arange(DIVERGENCE_FIT_FROM, J)
    inc = sums[fit_levels + 1] - sums[fit_levels]
    x = 1.0 / fit_levels
    c = float(np.dot(x, inc) / np.dot(x, x))
    resid = inc - c * x
    dof = fit_levels.size - 1
    se = math.sqrt(float(np.dot(resid, resid)) / dof / float(np.dot(x, x)))
    c_lower = c - stats.t.ppf(0.95, dof) * se
    if np.all(inc > 0):
        logs = np.log(inc)
        pw, pw_res = np.polyfit(np.log(fit_levels), logs, 1, full=True)[:2]
        gm, gm_res = np.polyfit(fit_levels.astype(float), logs, 1, full=True)[:2]
        exponent, geo = float(-pw[0]), float(gm[0])
        power_law = float(pw_res[0]) < float(gm_res[0])
    else:
        exponent, geo, power_law = math.inf, -math.inf, False
    divergent = c_lower > 0 and exponent < DIVERGENCE_MAX_EXPONENT and power_law
    return DivergenceReport("divergent" if divergent else "convergent", levels, sums, fit_levels,
                            inc, c, float(c_lower), exponent, geo, power_law)


# ---------------------------------------------------------------------------
# disc identities

def _theta_size(factor_points: int, reach: float) -> int:
    # the kernel 1/(1 - w e^{-i theta})^2 has Fourier tail |w|^n; 40/(1-|w|)
    # points push the aliasing below e^-40
    need = max(factor_points, 40.0 / max(1.0 - reach, 1e-12))
    return 1 << max(3, math.ceil(math.log2(need)))


def _disc_points(degree: int, reach_t: float, factor: int = 8):
    rho, w, _ = disc_rule(degree, 8)
    r_max = math.sqrt(rho.max())
    n_theta = _theta_size(factor * (degree + 1), reach_t * r_max)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = np.sqrt(rho)[:, None] * np.exp(1j * theta)[None, :]
    return z, w


def bergman_reproduce_check(h: TaylorPolynomial, t: float) -> float:
    """``|int_D h(z) / (1 - t conj z)^2 dA(z) - h(t)|`` by disc quadrature."""
    if not abs(t) < 1:
        raise ValueError("reproducing point must satisfy |t| < 1")
    z, w = _disc_points(h.degree, abs(t))
    vals = evaluate(h, z) / (1.0 - t * np.conj(z)) ** 2
    integral = np.dot(w, vals.mean(axis=1))
    return float(abs(integral - evaluate(h, t)))


def pairing_identity_check(m: Measure, f, h: TaylorPolynomial, *, return_sides: bool = False):
    """Compare ``int_D h conj((I f)') dA`` with ``int t conj(f(t)) h(t) dmu(t)``.

    The left side is a disc quadrature with ``(I f)'`` from the differentiated
    kernel; the right side is a quadrature over the measure.  Returns the
    absolute deviation, or ``(deviation, left, right)``.
    """
    nodes = measure_nodes(m)
    t = nodes.t
    ft = _values_at(f, t)
    right = complex(np.dot(nodes.weights, t * np.conj(ft) * evaluate(h, t)))
    z, w = _disc_points(h.degree, float(t.max()))
    gp = integral_apply_derivative(m, f, z.ravel()).reshape(z.shape)
    left = complex(np.dot(w, (evaluate(h, z) * np.conj(gp)).mean(axis=1)))
    dev = abs(left - right)
    return (dev, left, right) if return_sides else dev


def radial_identity_checks(h: TaylorPolynomial, t: float) -> tuple[float, float]:
    """Deviations of the two radial reductions at ``0 < t < 1``.

    (a) ``int_0^1 r h(r^2 t) dr`` against ``(1/(2t)) int_0^t h(s) ds``;
    (b) ``int_D |z|^2 h(z) / (1 - t conj z)^2 dA`` against
    ``int_0^1 2 r^3 [h(r^2 t) + r^2 t h'(r^2 t)] dr``.
    """
    if not (0.0 < t < 1.0):
        raise ValueError("radial identities need 0 < t < 1")
    K = h.degree
    r, wr = gauss_legendre(K + 3, 0.0, 1.0)
    s = r * r * t
    hs = evaluate(h, s)
    lhs_a = np.dot(wr, r * hs)
    k = np.arange(K + 1)
    antideriv = TaylorPolynomial(np.concatenate([[0.0], h.coeffs / (k + 1.0)]))
    rhs_a = evaluate(antideriv, t) / (2.0 * t)

    z, w = _disc_points(K + 1, t)
    vals = np.abs(z) ** 2 * evaluate(h, z) / (1.0 - t * np.conj(z)) ** 2
    lhs_b = np.dot(w, vals.mean(axis=1))
    rhs_b = np.dot(wr, 2.0 * r ** 3 * (hs + s * evaluate(derivative(h), s)))
    return float(abs(lhs_a - rhs_a)), float(abs(lhs_b - rhs_b))
