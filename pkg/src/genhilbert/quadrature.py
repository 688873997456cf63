"""Quadrature rules shared by the measure, norm and identity code.

Radial integrals over the unit disc are written in the variable
``u = 1 - |z|^2`` (or ``u = 1 - t`` on ``[0, 1)``), so that the endpoint
singularity of weights such as ``u**alpha`` sits at ``u = 0``.  The interval
is cut into dyadic shells ``[2**-(j+1), 2**-j]`` with a Gauss-Legendre rule on
each, and the innermost piece ``[0, u_s]`` gets a product-integration rule
that absorbs the singular weight exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureScheme",
    "RadialRule",
    "gauss_legendre",
    "dyadic_shell_rule",
    "radial_rule",
    "angular_size",
    "disc_rule",
]


@dataclass(frozen=True)
class QuadratureScheme:
    """Resolution knobs for disc integrals.

    radial_shells
        Number of dyadic shells ``J``; shells ``j = 0..J`` are used.
    nodes_per_shell
        Gauss-Legendre nodes per shell.
    angular_factor
        Oversampling multiplier for the uniform angular grid.
    """

    radial_shells: int = 40
    nodes_per_shell: int = 16
    angular_factor: int = 8

    def __post_init__(self):
        if self.radial_shells < 1 or self.nodes_per_shell < 2 or self.angular_factor < 1:
            raise ValueError(f"invalid quadrature scheme {self!r}")


DEFAULT_SCHEME = QuadratureScheme()


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on ``[a, b]``."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def dyadic_shell_rule(shells: int, nodes: int, top: float = 1.0):
    """Gauss-Legendre nodes on the shells ``[top 2^-(j+1), top 2^-j]``, ``j < shells``.

    Returns ``(u, w)`` in the variable ``u`` measured from the singular end.
    The piece ``[0, top 2^-shells]`` is not covered.
    """
    x, w = _leggauss(nodes)
    j = np.arange(shells)
    lo = top * np.ldexp(1.0, -(j + 1))
    half = 0.5 * lo  # shell width is lo
    u = (lo + half)[:, None] + half[:, None] * x[None, :]
    ww = half[:, None] * w[None, :]
    return u.ravel(), ww.ravel()


def _log_weight(u, log_power):
    # L = log(2 / (1 - r)) with r = sqrt(1 - u); 1 - r = u / (1 + sqrt(1 - u))
    one_minus_r = u / (1.0 + np.sqrt(1.0 - u))
    return np.log(2.0 / one_minus_r) ** log_power


def _weight(u, alpha, log_power):
    w = u ** alpha
    if log_power:
        w = w * _log_weight(u, log_power)
    return w


@dataclass(frozen=True)
class RadialRule:
    """Nodes ``u = 1 - rho`` (``rho = |z|^2``) and weights for ``int_0^1 w(u) g(u) du``."""

    u: np.ndarray
    weights: np.ndarray

    @property
    def rho(self):
        return 1.0 - self.u

    @property
    def r(self):
        return np.sqrt(1.0 - self.u)

    @property
    def log_r(self):
        return 0.5 * np.log1p(-self.u)

    def integrate(self, values):
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=256)
def _radial_rule_cached(alpha, log_power, shells, nodes, inner_exp):
    u_s = math.ldexp(1.0, -inner_exp)
    # shell j = 0 (|z|^2 < 1/2) is integrated in r: integrands are smooth in r,
    # not in u = 1 - r^2
    r0, wr0 = gauss_legendre(nodes, 0.0, math.sqrt(0.5))
    u0 = 1.0 - r0 * r0
    w0 = 2.0 * r0 * wr0 * _weight(u0, alpha, log_power)
    u_sh, w_sh = dyadic_shell_rule(inner_exp, nodes)
    keep = u_sh < 0.5
    u_sh = np.concatenate([u0, u_sh[keep]])
    w_sh = np.concatenate([w0, w_sh[keep] * _weight(u_sh[nodes:], alpha, log_power)])

    # product integration on [0, u_s]: weights W_i = int w(u) l_i(u) du for the
    # Lagrange basis l_i on Gauss-Legendre nodes, moments from a finer rule
    xg, _ = _leggauss(nodes)
    u_in = 0.5 * u_s * (xg + 1.0)
    fu, fw = dyadic_shell_rule(shells, nodes, top=u_s)
    fw = fw * _weight(fu, alpha, log_power)
    # bottom of the fine rule: Gauss-Jacobi for u**alpha, log factor frozen at nodes
    from scipy.special import roots_jacobi

    bottom = math.ldexp(u_s, -shells)
    xj, wj = roots_jacobi(nodes, 0.0, alpha)
    bu = 0.5 * bottom * (xj + 1.0)
    bw = (0.5 * bottom) ** (alpha + 1.0) * wj
    if log_power:
        bw = bw * _log_weight(bu, log_power)
    fu = np.concatenate([fu, bu])
    fw = np.concatenate([fw, bw])
    vander_fine = np.polynomial.legendre.legvander(2.0 * fu / u_s - 1.0, nodes - 1)
    moments = fw @ vander_fine
    vander_nodes = np.polynomial.legendre.legvander(xg, nodes - 1)
    w_in = np.linalg.solve(vander_nodes.T, moments)

    u = np.concatenate([u_sh, u_in])
    w = np.concatenate([w_sh, w_in])
    order = np.argsort(u)[::-1]
    u = u[order]
    w = w[order]
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def radial_rule(alpha: float = 0.0, log_power: float = 0.0, *, scheme: QuadratureScheme = DEFAULT_SCHEME,
                smooth_below: float | None = None) -> RadialRule:
    """Rule for ``int_0^1 u^alpha L(u)^log_power g(u) du`` with ``L = log(2/(1-r))``.

    ``smooth_below`` is the ``u``-scale under which ``g`` is known to be smooth;
    the dyadic shells stop there and one product-integration panel covers the
    rest.  Without it the shells run through ``j = 0..J`` as configured.
    """
    if alpha <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {alpha}")
    inner = scheme.radial_shells + 1
    if smooth_below is not None:
        if smooth_below <= 0:
            raise ValueError("smooth_below must be positive")
        inner = min(inner, max(1, math.ceil(-math.log2(smooth_below))))
    u, w = _radial_rule_cached(float(alpha), float(log_power), scheme.radial_shells,
                               scheme.nodes_per_shell, inner)
    return RadialRule(u, w)


def angular_size(degree: int, p: float, factor: int) -> int:
    """Power-of-two angular grid size for integrating ``|f|^p`` of a degree-``degree`` polynomial.

    Even integer ``p`` makes ``|f|^p`` a trigonometric polynomial of degree
    ``p * degree``, which the uniform grid integrates exactly once it has more
    than ``p * degree`` points.
    """
    if math.isinf(p):
        base = factor * (degree + 1)
    elif float(p).is_integer():
        base = factor * (int(p) * degree + 1)
    else:
        base = factor * (degree + 1)
    return 1 << max(3, math.ceil(math.log2(base)))


def disc_rule(poly_degree: int, n_theta: int):
    """Rule for ``int_D F dA`` (normalized area) when the angular mean of ``F``
    is a polynomial of degree ``poly_degree`` in ``rho = |z|^2``.

    Returns ``(rho, w_rho, theta)``; the integral is
    ``sum_i w_rho[i] * mean_theta F(sqrt(rho_i) e^{i theta})``.
    """
    n = max(2, poly_degree // 2 + 2)
    rho, w = gauss_legendre(n, 0.0, 1.0)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    return rho, w, theta
