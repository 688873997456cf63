"""Truncated Taylor series and their norms in spaces of analytic functions.

Supported spaces (``dA`` is normalized area measure on the disc):

* Hardy ``H^p``: ``sup_r M_p(r, f)``, which for a polynomial is ``M_p(1, f)``;
* Bergman ``A^p_alpha``: ``((alpha+1) int |f|^p (1-|z|^2)^alpha dA)^(1/p)``;
* Dirichlet ``D^p_alpha``: ``|f(0)| + ||f'||_{A^p_alpha}``;
* Bloch: ``|f(0)| + sup (1-|z|^2) |f'(z)|``;
* ``LogBloch(g)``: as Bloch with the extra weight ``L(z)^-g``;
* ``LogBergman1(g)``: ``int |f| L(z)^g dA`` (no normalization);
* ``LogDirichlet1(g)``: ``|f(0)| + ||f'||_{LogBergman1(g)}``;

where ``L(z) = log(2 / (1 - |z|))``.  Area integrals run over ``u = 1 - |z|^2``
with the dyadic-shell rules of :mod:`genhilbert.quadrature`.
"""
from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import _backend
from .quadrature import DEFAULT_SCHEME, QuadratureScheme, angular_size, radial_rule

__all__ = [
    "TaylorPolynomial",
    "KernelFunction",
    "SpaceSpec",
    "TestFunction",
    "Family",
    "TruncationError",
    "SpaceParseError",
    "evaluate",
    "derivative",
    "integral_mean",
    "angular_mean_pp",
    "max_modulus",
    "norm",
    "coefficient_norm",
    "default_truncation",
    "test_function",
    "log_coefficient_function",
    "parse_space",
]

RICHARDSON_RTOL = 1e-6
MAX_ANGULAR = 1 << 22


class TruncationError(ValueError):
    """Requested truncation leaves a coefficient tail above double precision."""


class SpaceParseError(ValueError):
    """A space literal could not be parsed; ``position`` is the 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True, eq=False)
class TaylorPolynomial:
    """``sum_{k=0}^{K} coeffs[k] z^k``; ``degree`` is the storage bound ``K``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_real(self) -> bool:
        return not np.any(self.coeffs.imag)

    @property
    def real_coeffs(self) -> np.ndarray:
        if not self.is_real:
            raise ValueError("polynomial has complex coefficients")
        return self.coeffs.real

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=np.complex128)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return TaylorPolynomial(out)

    def __mul__(self, scalar):
        return TaylorPolynomial(self.coeffs * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TaylorPolynomial(degree={self.degree})"


@dataclass(frozen=True)
class KernelFunction:
    """``const * (1 - b z)^(-lam)`` with closed-form values and integral means."""

    const: float
    b: float
    lam: float

    def __call__(self, z):
        return self.const * (1.0 - self.b * np.asarray(z, dtype=np.complex128)) ** (-self.lam)

    def derivative(self) -> "KernelFunction":
        return KernelFunction(self.const * self.lam * self.b, self.b, self.lam + 1.0)

    def at_zero(self) -> float:
        return self.const

    def sup_modulus(self, r):
        """``M_inf(r, f)``, attained at the positive real axis."""
        return self.const * (1.0 - self.b * np.asarray(r, dtype=float)) ** (-self.lam)

    def angular_mean_pp(self, r, p: float):
        """``M_p(r, f)^p`` from the hypergeometric closed form.

        ``(1/2pi) int |1 - w e^{i t}|^{-2s} dt = 2F1(s, s; 1; |w|^2)``; the Euler
        transform keeps it stable as ``|w| -> 1``.
        """
        s = 0.5 * self.lam * p
        x = (self.b * np.asarray(r, dtype=float)) ** 2
        if s > 0.5:
            val = (1.0 - x) ** (1.0 - 2.0 * s) * special.hyp2f1(1.0 - s, 1.0 - s, 1.0, x)
        else:
            val = special.hyp2f1(s, s, 1.0, x)
        return self.const ** p * val


@dataclass(frozen=True)
class SpaceSpec:
    """A function space: ``kind`` plus its parameters.

    kind : {"hardy", "bergman", "dirichlet", "bloch", "logbloch", "logbergman1", "logdirichlet1"}
    p, alpha : used by hardy (p) and bergman/dirichlet (p, alpha)
    gamma : log exponent for the log-weighted kinds
    """

    kind: str
    p: float = 1.0
    alpha: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        kinds = ("hardy", "bergman", "dirichlet", "bloch", "logbloch", "logbergman1", "logdirichlet1")
        if self.kind not in kinds:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind in ("hardy", "bergman", "dirichlet"):
            if not (0.0 < self.p < math.inf):
                raise ValueError(f"exponent p={self.p} must be positive and finite")
        if self.kind in ("bergman", "dirichlet") and not self.alpha > -1.0:
            raise ValueError(f"weight exponent alpha={self.alpha} must exceed -1")
        if not math.isfinite(self.gamma):
            raise ValueError("log exponent must be finite")

    @classmethod
    def hardy(cls, p):
        return cls("hardy", p=float(p))

    @classmethod
    def bergman(cls, p, alpha=0.0):
        return cls("bergman", p=float(p), alpha=float(alpha))

    @classmethod
    def dirichlet(cls, p, alpha=0.0):
        return cls("dirichlet", p=float(p), alpha=float(alpha))

    @classmethod
    def bloch(cls):
        return cls("bloch")

    @classmethod
    def log_bloch(cls, gamma):
        return cls("logbloch", gamma=float(gamma))

    @classmethod
    def log_bergman1(cls, gamma):
        return cls("logbergman1", gamma=float(gamma))

    @classmethod
    def log_dirichlet1(cls, gamma):
        return cls("logdirichlet1", gamma=float(gamma))

    def __str__(self):
        if self.kind == "hardy":
            return f"hardy:p={self.p!r}"
        if self.kind in ("bergman", "dirichlet"):
            return f"{self.kind}:p={self.p!r},alpha={self.alpha!r}"
        if self.kind == "bloch":
            return "bloch"
        return f"{self.kind}:gamma={self.gamma!r}"


_SPACE_PARAMS = {
    "hardy": ("p",),
    "bergman": ("p", "alpha"),
    "dirichlet": ("p", "alpha"),
    "bloch": (),
    "logbloch": ("gamma",),
    "logbergman1": ("gamma",),
    "logdirichlet1": ("gamma",),
}
_SPACE_RE = re.compile(r"\s*([a-z0-9]+)\s*(?::(.*))?$", re.S)
_PARAM_RE = re.compile(r"\s*([a-z]+)\s*=\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(,|$)")


def parse_space(text: str) -> SpaceSpec:
    """Parse literals such as ``bergman:p=4,alpha=1``, ``hardy:p=1`` or ``bloch``.

    ``alpha`` defaults to 0; every other listed parameter is required.
    """
    m = _SPACE_RE.match(text)
    if m is None:
        raise SpaceParseError("expected a space kind", text, 0)
    kind = m.group(1)
    if kind not in _SPACE_PARAMS:
        raise SpaceParseError(f"unknown space kind {kind!r}", text, m.start(1))
    allowed = _SPACE_PARAMS[kind]
    params = {}
    if m.group(2) is not None:
        pos = m.start(2)
        while pos < len(text):
            pm = _PARAM_RE.match(text, pos)
            if pm is None:
                raise SpaceParseError("expected name=number", text, pos)
            name = pm.group(1)
            if name not in allowed:
                raise SpaceParseError(f"parameter {name!r} not valid for {kind}", text, pm.start(1))
            if name in params:
                raise SpaceParseError(f"repeated parameter {name!r}", text, pm.start(1))
            params[name] = float(pm.group(2))
            pos = pm.end()
            if pm.group(3) == "":
                break
    for name in allowed:
        if name not in params and name != "alpha":
            raise SpaceParseError(f"missing parameter {name!r}", text, len(text))
    try:
        return SpaceSpec(kind, **params)
    except ValueError as exc:
        raise SpaceParseError(str(exc), text, m.start(2) if m.group(2) is not None else 0) from None


# ---------------------------------------------------------------------------
# evaluation

def evaluate(f, z):
    """Value of ``f`` at ``z`` (scalar or array), by Horner for polynomials."""
    if isinstance(f, KernelFunction):
        return f(z)
    z_arr = np.asarray(z, dtype=np.complex128)
    vals = _backend.horner(f.coeffs, np.ascontiguousarray(z_arr.ravel()))
    if z_arr.ndim == 0:
        return complex(vals[0])
    return vals.reshape(z_arr.shape)


def derivative(f):
    """``f'``: coefficients shifted down and scaled by the index."""
    if isinstance(f, KernelFunction):
        return f.derivative()
    c = f.coeffs
    if c.size == 1:
        return TaylorPolynomial(np.zeros(1))
    return TaylorPolynomial(c[1:] * np.arange(1, c.size))


def _circle_values(coeffs, radii, n_theta):
    """``f(r e^{2 pi i j / n})`` for each radius (rows), via one FFT per radius."""
    K = coeffs.size
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    with np.errstate(under="ignore"):
        scaled = coeffs[None, :] * np.power(radii[:, None], np.arange(K)[None, :])
    if K > n_theta:  # alias the coefficients onto the grid
        pad = (-K) % n_theta
        scaled = np.concatenate([scaled, np.zeros((radii.size, pad))], axis=1)
        scaled = scaled.reshape(radii.size, -1, n_theta).sum(axis=1)
    return np.fft.ifft(scaled, n=n_theta, axis=1) * n_theta


def _mean_pp_grid(coeffs, radii, p, n_theta):
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    out = np.empty(radii.size)
    rows = max(1, (1 << 22) // max(n_theta, coeffs.size))
    for s in range(0, radii.size, rows):
        vals = np.abs(_circle_values(coeffs, radii[s:s + rows], n_theta))
        out[s:s + rows] = np.mean(vals * vals if p == 2.0 else vals ** p, axis=1)
    return out


def max_modulus(f, radii, *, factor: int = DEFAULT_SCHEME.angular_factor) -> np.ndarray:
    """``M_inf(r, f)`` at each radius; for polynomials the maximum over an oversampled grid."""
    if isinstance(f, KernelFunction):
        return f.sup_modulus(radii)
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    n = angular_size(f.degree, 1, factor)
    out = np.empty(radii.size)
    rows = max(1, (1 << 22) // max(n, f.coeffs.size))
    for s in range(0, radii.size, rows):
        out[s:s + rows] = np.max(np.abs(_circle_values(f.coeffs, radii[s:s + rows], n)), axis=1)
    return out


def angular_mean_pp(f, radii, p: float, *, factor: int = DEFAULT_SCHEME.angular_factor):
    """``M_p(r, f)^p`` at each radius.

    Even integer ``p`` is exact on a grid with more than ``p * degree`` points.
    Otherwise the grid doubles until the largest relative change is below
    ``1e-6``.
    """
    if isinstance(f, KernelFunction):
        return f.angular_mean_pp(radii, p)
    coeffs = f.coeffs
    deg = f.degree
    n = angular_size(deg, p, factor)
    vals = _mean_pp_grid(coeffs, radii, p, n)
    if float(p).is_integer() and int(p) % 2 == 0:
        return vals
    while n < MAX_ANGULAR:
        n *= 2
        finer = _mean_pp_grid(coeffs, radii, p, n)
        scale = np.maximum(np.abs(finer), np.finfo(float).tiny)
        done = np.max(np.abs(finer - vals) / scale) < RICHARDSON_RTOL
        vals = finer
        if done:
            return vals
    warnings.warn(f"angular mean not converged at {n} points", RuntimeWarning, stacklevel=2)
    return vals


def integral_mean(f, r: float, p: float, *, factor: int = DEFAULT_SCHEME.angular_factor) -> float:
    """``M_p(r, f)``; ``p = inf`` gives the maximum modulus on the circle of radius ``r``."""
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"radius {r} outside [0, 1]")
    if not p > 0:
        raise ValueError(f"integral-mean exponent must be positive, got {p}")
    if isinstance(f, KernelFunction):
        if math.isinf(p):
            return float(f.sup_modulus(r))
        return float(f.angular_mean_pp(r, p) ** (1.0 / p))
    if math.isinf(p):
        return float(max_modulus(f, [r], factor=factor)[0])
    return float(angular_mean_pp(f, [r], p, factor=factor)[0] ** (1.0 / p))


# ---------------------------------------------------------------------------
# norms

def _smooth_scale(f, p):
    if isinstance(f, KernelFunction):
        return 0.25 * (1.0 - f.b)
    return 1.0 / (8.0 * (p * max(f.degree, 1) + 1.0))


def _area_integral(f, p, alpha, log_power, scheme):
    """``int_0^1 u^alpha L^log_power M_p^p(sqrt(1-u), f) du``."""
    rule = radial_rule(alpha, log_power, scheme=scheme, smooth_below=_smooth_scale(f, p))
    means = angular_mean_pp(f, rule.r, p, factor=scheme.angular_factor)
    return rule.integrate(means)


def _value_at_zero(f):
    if isinstance(f, KernelFunction):
        return abs(f.at_zero())
    return float(abs(f.coeffs[0]))


def _bloch_sup(f, log_power, scheme):
    fp = derivative(f)
    j = np.arange(0, scheme.radial_shells + 1)
    radii = np.unique(np.concatenate([1.0 - np.ldexp(1.0, -j),
                                      radial_rule(0.0, scheme=scheme, smooth_below=_smooth_scale(f, 1)).r]))
    radii = radii[radii < 1.0]
    sup = max_modulus(fp, radii, factor=scheme.angular_factor)
    weight = 1.0 - radii * radii
    if log_power:
        weight = weight * np.log(2.0 / (1.0 - radii)) ** log_power
    return float(np.max(weight * sup))


def norm(f, space: SpaceSpec, scheme: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """Norm of ``f`` (a :class:`TaylorPolynomial` or :class:`KernelFunction`) in ``space``.

    Bloch-type suprema are maxima over a finite radial grid, so they are lower
    bounds that tighten as the grid is refined.
    """
    if not isinstance(space, SpaceSpec):
        raise TypeError("space must be a SpaceSpec")
    kind = space.kind
    if kind == "hardy":
        p = space.p
        if isinstance(f, KernelFunction):
            return float(f.angular_mean_pp(1.0, p) ** (1.0 / p))
        return integral_mean(f, 1.0, p, factor=scheme.angular_factor)
    if kind == "bergman":
        p, a = space.p, space.alpha
        return float(((a + 1.0) * _area_integral(f, p, a, 0.0, scheme)) ** (1.0 / p))
    if kind == "dirichlet":
        return _value_at_zero(f) + norm(derivative(f), SpaceSpec.bergman(space.p, space.alpha), scheme)
    if kind == "bloch":
        return _value_at_zero(f) + _bloch_sup(f, 0.0, scheme)
    if kind == "logbloch":
        return _value_at_zero(f) + _bloch_sup(f, -space.gamma, scheme)
    if kind == "logbergman1":
        return float(_area_integral(f, 1.0, 0.0, space.gamma, scheme))
    if kind == "logdirichlet1":
        return _value_at_zero(f) + norm(derivative(f), SpaceSpec.log_bergman1(space.gamma), scheme)
    raise ValueError(f"unsupported space {space}")


def _check_monotone(a: np.ndarray):
    if np.any(a < 0):
        raise ValueError("coefficient functional needs non-negative coefficients")
    if np.any(np.diff(a) > 0):
        raise ValueError("coefficient functional needs non-increasing coefficients")


def coefficient_norm(f: TaylorPolynomial, space: SpaceSpec, *, check: bool = True) -> float:
    """Coefficient functional equivalent to the norm for non-negative non-increasing coefficients.

    * ``bergman(p, alpha)``, ``p > 1``: ``(a_0^p + sum_{n>=1} n^(p-3-alpha) a_n^p)^(1/p)``
    * ``dirichlet(1, 0)``: ``sum a_n / (n + 1)``
    * ``dirichlet(p, alpha)``, ``p > 1``, ``p - 2 < alpha <= p - 1``:
      ``(sum (n+1)^(2p-alpha-3) a_n^p)^(1/p)``

    The coefficients are checked exactly (no tolerance) unless ``check`` is off;
    the Bergman functional treats ``a_0`` separately and checks ``n >= 1`` only.
    """
    a = f.real_coeffs
    n = np.arange(a.size, dtype=float)
    if space.kind == "bergman" and space.p > 1:
        if check:
            _check_monotone(a[1:])
            if a[0] < 0:
                raise ValueError("coefficient functional needs non-negative coefficients")
        p, al = space.p, space.alpha
        terms = n[1:] ** (p - 3.0 - al) * a[1:] ** p
        return float(math.fsum(np.concatenate([[a[0] ** p], terms])) ** (1.0 / p))
    if space.kind == "dirichlet":
        if check:
            _check_monotone(a)
        p, al = space.p, space.alpha
        if p == 1.0 and al == 0.0:
            return float(math.fsum(a / (n + 1.0)))
        if p > 1.0 and p - 2.0 < al <= p - 1.0:
            return float(math.fsum((n + 1.0) ** (2.0 * p - al - 3.0) * a ** p) ** (1.0 / p))
    raise ValueError(f"no coefficient functional for {space}")


# ---------------------------------------------------------------------------
# test families

@dataclass(frozen=True)
class Family:
    """Test-function family ``(1 - b^2)^e / (1 - b z)^lam``.

    kind "h1": ``e = 1, lam = 2``; "bergman": ``e = 1 - alpha/p, lam = 2/p + 1``;
    "dirichlet": ``e = 1 - alpha/p, lam = 2/p``.
    """

    kind: str
    p: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("h1", "bergman", "dirichlet"):
            raise ValueError(f"unknown family {self.kind!r}")

    @property
    def lam(self) -> float:
        if self.kind == "h1":
            return 2.0
        if self.kind == "bergman":
            return 2.0 / self.p + 1.0
        return 2.0 / self.p

    def const(self, b: float) -> float:
        e = 1.0 if self.kind == "h1" else 1.0 - self.alpha / self.p
        return (1.0 - b * b) ** e

    def __str__(self):
        if self.kind == "h1":
            return "h1"
        return f"{self.kind}:p={self.p!r},alpha={self.alpha!r}"


@dataclass(frozen=True, eq=False)
class TestFunction:
    """Truncated expansion of a family member together with its closed form."""

    __test__ = False  # not a pytest class

    family: Family
    b: float
    poly: TaylorPolynomial = field(repr=False)
    kernel: KernelFunction

    @property
    def degree(self):
        return self.poly.degree


def default_truncation(b: float) -> int:
    """``K(b) = ceil(50 / (1 - b))``."""
    return int(math.ceil(50.0 / (1.0 - b)))


def _binomial_series(lam: float, b: float, K: int) -> np.ndarray:
    # coefficients of (1 - b z)^(-lam): c_{k+1} = c_k b (k + lam) / (k + 1)
    k = np.arange(K, dtype=float)
    ratios = b * (k + lam) / (k + 1.0)
    with np.errstate(under="ignore"):
        logs = np.concatenate([[0.0], np.cumsum(np.log(ratios))])
        return np.exp(logs)


def test_function(family: Family, b: float, K: int | None = None) -> TestFunction:
    """Family member at ``b`` truncated at degree ``K`` (default :func:`default_truncation`).

    Raises :class:`TruncationError` unless ``b^K (K + 1) < 1e-12``.
    """
    b = float(b)
    if not (0.0 < b < 1.0):
        raise ValueError(f"family parameter b={b} outside (0, 1)")
    if K is None:
        K = default_truncation(b)
    K = int(K)
    if not K * math.log(b) + math.log(K + 1.0) < math.log(1e-12):
        raise TruncationError(f"degree {K} too small for b={b}: b^K (K+1) >= 1e-12")
    lam = family.lam
    C = family.const(b)
    if family.kind == "h1":
        k = np.arange(K + 1, dtype=float)
        with np.errstate(under="ignore"):
            coeffs = C * (k + 1.0) * np.power(b, k)
    else:
        coeffs = C * _binomial_series(lam, b, K)
    return TestFunction(family, b, TaylorPolynomial(coeffs), KernelFunction(C, b, lam))


test_function.__test__ = False  # not a pytest test


def log_coefficient_function(K: int) -> TaylorPolynomial:
    """``sum_{n=1}^{K} z^n / log(n + 1)``."""
    if K < 1:
        raise ValueError("degree must be at least 1")
    a = np.zeros(K + 1)
    a[1:] = 1.0 / np.log(np.arange(2.0, K + 2.0))
    return TaylorPolynomial(a)
