"""Finite positive measures on [0, 1): moments, tails and Carleson traces.

Three variants are supported: a finite list of atoms, the density
``c (1 - t)^gamma (log(2 / (1 - t)))^delta dt`` and Lebesgue measure (the
density with ``gamma = delta = 0`` and ``c = 1``).  Everything is immutable,
so moment tables can be cached per measure.
"""
from __future__ import annotations

import math
import re
import threading
from collections import OrderedDict
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import special

from . import _backend
from .quadrature import DEFAULT_SCHEME, QuadratureScheme, dyadic_shell_rule

__all__ = [
    "Measure",
    "MomentTable",
    "CarlesonTrace",
    "MeasureParseError",
    "total_mass",
    "tail_mass",
    "moment",
    "moments_upto",
    "moment_range",
    "measure_nodes",
    "dyadic_grid",
    "carleson_constant",
    "log_carleson_constant",
    "trace_is_bounded",
    "log_weight_transform",
    "parse_measure",
    "format_measure",
]

# atoms closer to 1 than this leave no meaningful floating-point tail
ATOM_LIMIT = 1.0 - 2.0 ** -60


@dataclass(frozen=True)
class Measure:
    """A finite positive Borel measure on ``[0, 1)``.

    Build instances with :meth:`lebesgue`, :meth:`atomic` or :meth:`density`
    rather than calling the constructor directly; those normalize the data
    (atoms sorted and merged, ``density(0, 0, 1)`` turned into Lebesgue).

    Attributes
    ----------
    kind : {"lebesgue", "atomic", "density"}
    atoms : tuple of (t, c)
        Atom locations (strictly increasing) and positive masses.
    gamma, delta, scale : float
        Density parameters; ignored for the other variants.
    """

    kind: str
    atoms: tuple = ()
    gamma: float = 0.0
    delta: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("lebesgue", "atomic", "density"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "atomic":
            if not self.atoms:
                raise ValueError("an atomic measure needs at least one atom")
            prev = -1.0
            for t, c in self.atoms:
                if not (0.0 <= t < ATOM_LIMIT):
                    raise ValueError(f"atom location {t!r} outside [0, 1 - 2^-60)")
                if not (c > 0.0 and math.isfinite(c)):
                    raise ValueError(f"atom mass {c!r} must be positive and finite")
                if t <= prev:
                    raise ValueError("atoms must be strictly increasing; use Measure.atomic")
                prev = t
        elif self.kind == "density":
            if not self.gamma > -1.0:
                raise ValueError(f"density exponent gamma={self.gamma} must exceed -1 (finite mass)")
            if not (self.scale > 0.0 and math.isfinite(self.scale)):
                raise ValueError(f"density scale {self.scale!r} must be positive and finite")
            if not math.isfinite(self.delta):
                raise ValueError("density log exponent must be finite")

    @classmethod
    def lebesgue(cls) -> "Measure":
        return cls("lebesgue")

    @classmethod
    def atomic(cls, atoms) -> "Measure":
        """Atoms from ``(t, c)`` pairs; repeated locations have their masses added."""
        merged: dict[float, float] = {}
        for t, c in atoms:
            t = float(t)
            merged[t] = merged.get(t, 0.0) + float(c)
        return cls("atomic", atoms=tuple(sorted(merged.items())))

    @classmethod
    def density(cls, gamma: float, delta: float = 0.0, c: float = 1.0) -> "Measure":
        gamma, delta, c = float(gamma), float(delta), float(c)
        if gamma == 0.0 and delta == 0.0 and c == 1.0:
            return cls.lebesgue()
        return cls("density", gamma=gamma, delta=delta, scale=c)

    @property
    def density_params(self) -> tuple[float, float, float]:
        """``(gamma, delta, c)``, also for Lebesgue measure."""
        if self.kind == "lebesgue":
            return 0.0, 0.0, 1.0
        if self.kind == "density":
            return self.gamma, self.delta, self.scale
        raise ValueError("atomic measures have no density")

    @property
    def atom_locations(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def atom_masses(self) -> np.ndarray:
        return np.array([c for _, c in self.atoms])

    def __str__(self):
        return format_measure(self)


@dataclass(frozen=True)
class MomentTable:
    """Moments ``mu_0 .. mu_N`` of ``source``.

    ``exact`` is true when every entry comes from a closed form (atomic sums,
    Beta functions) rather than quadrature.
    """

    source: Measure
    max_index: int
    values: np.ndarray = field(repr=False)
    exact: bool

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return self.max_index + 1


@dataclass(frozen=True)
class CarlesonTrace:
    """Ratios ``tail(t) L(t)^alpha / (1 - t)^s`` along a grid and the verdict drawn from them."""

    grid: np.ndarray
    values: np.ndarray
    constant: float
    bounded: bool
    slope: float
    spread: float
    s: float
    alpha: float = 0.0


class MeasureParseError(ValueError):
    """A measure literal could not be parsed; ``position`` is the 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# closed forms for the density

def _tail_integral(gamma: float, delta: float, U: float) -> float:
    """``int_0^U u^gamma (log(2/u))^delta du`` for ``0 < U <= 1``."""
    if U <= 0.0:
        return 0.0
    g1 = gamma + 1.0
    if delta == 0.0:
        return U ** g1 / g1
    x = g1 * (math.log(2.0) - math.log(U))
    val = mpmath.power(2, g1) * mpmath.power(g1, -(delta + 1.0)) * mpmath.gammainc(delta + 1.0, a=x)
    return float(val)


def total_mass(m: Measure) -> float:
    """``mu([0, 1))``."""
    if m.kind == "atomic":
        return math.fsum(m.atom_masses)
    gamma, delta, c = m.density_params
    return c * _tail_integral(gamma, delta, 1.0)


def tail_mass(m: Measure, t: float) -> float:
    """``mu([t, 1))`` for ``0 <= t < 1``."""
    t = float(t)
    if not (0.0 <= t < 1.0):
        raise ValueError(f"tail point t={t} outside [0, 1)")
    if m.kind == "atomic":
        loc = m.atom_locations
        return math.fsum(m.atom_masses[loc >= t])
    gamma, delta, c = m.density_params
    return c * _tail_integral(gamma, delta, 1.0 - t)


# ---------------------------------------------------------------------------
# quadrature nodes

@dataclass(frozen=True)
class MeasureNodes:
    """Nodes for ``int g dmu``: ``sum(weights * g(t))``.

    ``u = 1 - t`` is kept separately so that ``log t = log1p(-u)`` stays
    accurate for nodes close to 1.
    """

    u: np.ndarray
    weights: np.ndarray

    @property
    def t(self):
        return 1.0 - self.u

    @property
    def log_t(self):
        with np.errstate(divide="ignore"):
            return np.log1p(-self.u)

    def integrate(self, values):
        return np.dot(self.weights, values)


_node_cache: dict = {}
_node_lock = threading.Lock()


def measure_nodes(m: Measure, scheme: QuadratureScheme = DEFAULT_SCHEME) -> MeasureNodes:
    """Quadrature nodes representing ``m``.

    Atomic measures are their own exact rule.  Densities use Gauss-Legendre
    nodes on the dyadic shells ``1 - t in [2^-(j+1), 2^-j]``, ``j = 0..J``;
    the mass below ``2^-(J+1)`` is lumped at its barycentre, both taken from
    the closed-form tail.
    """
    if m.kind == "atomic":
        return MeasureNodes(1.0 - m.atom_locations, m.atom_masses)
    key = (m, scheme)
    with _node_lock:
        hit = _node_cache.get(key)
    if hit is not None:
        return hit
    gamma, delta, c = m.density_params
    J = scheme.radial_shells
    u, w = dyadic_shell_rule(J + 1, scheme.nodes_per_shell)
    w = c * w * u ** gamma
    if delta:
        w = w * np.log(2.0 / u) ** delta
    U = math.ldexp(1.0, -(J + 1))
    lump_mass = _tail_integral(gamma, delta, U)
    lump_at = _tail_integral(gamma + 1.0, delta, U) / lump_mass
    nodes = MeasureNodes(np.append(u, lump_at), np.append(w, c * lump_mass))
    nodes.u.setflags(write=False)
    nodes.weights.setflags(write=False)
    with _node_lock:
        _node_cache[key] = nodes
    return nodes


# ---------------------------------------------------------------------------
# moments

def moment(m: Measure, n: int) -> float:
    """``mu_n = int t^n dmu``."""
    n = int(n)
    if n < 0:
        raise ValueError("moment index must be non-negative")
    if m.kind == "lebesgue":
        return 1.0 / (n + 1)
    if m.kind == "atomic":
        return math.fsum(m.atom_masses * np.power(m.atom_locations, n))
    gamma, delta, c = m.density_params
    if delta == 0.0:
        return c * float(special.beta(n + 1.0, gamma + 1.0))
    nodes = measure_nodes(m)
    with np.errstate(under="ignore"):
        return float(np.dot(nodes.weights, np.exp(n * nodes.log_t)))


def _atomic_moments(t: np.ndarray, c: np.ndarray, N: int) -> np.ndarray:
    # t^n = t^(n0) * t^k with both factors from np.power: 1.5 ulp per term
    block = min(512, N + 1)
    n_blocks = -(-(N + 1) // block)
    with np.errstate(under="ignore"):
        table = np.power(t[:, None], np.arange(block)[None, :])
        anchors = c[None, :] * np.power(t[None, :], (np.arange(n_blocks) * block)[:, None].astype(float))
    return (anchors @ table).ravel()[: N + 1]


def moment_range(m: Measure, n0: int, n1: int) -> np.ndarray:
    """Uncached moments ``mu_n`` for ``n0 <= n < n1``."""
    if not 0 <= n0 <= n1:
        raise ValueError("need 0 <= n0 <= n1")
    n = np.arange(n0, n1, dtype=float)
    if m.kind == "lebesgue":
        return 1.0 / (n + 1.0)
    if m.kind == "atomic":
        t, c = m.atom_locations, m.atom_masses
        with np.errstate(under="ignore"):
            start = c * np.power(t, float(n0))
        return _atomic_moments(t, start, n1 - n0 - 1) if n1 > n0 else n
    gamma, delta, c = m.density_params
    if delta == 0.0:
        return c * special.beta(n + 1.0, gamma + 1.0)
    nodes = measure_nodes(m)
    lt = nodes.log_t
    with np.errstate(under="ignore"):
        w = nodes.weights * np.exp(n0 * lt)
    return _backend.power_sums(lt, w, n1 - n0 - 1) if n1 > n0 else n


_CACHE_SIZE = 16
_moment_cache: OrderedDict = OrderedDict()
_moment_lock = threading.Lock()


def moments_upto(m: Measure, N: int, scheme: QuadratureScheme = DEFAULT_SCHEME) -> MomentTable:
    """Moments ``mu_0 .. mu_N`` as a cached :class:`MomentTable`.

    Lebesgue, atomic and pure-power densities are exact closed forms; densities
    with a logarithmic factor go through the dyadic-shell rule.
    """
    N = int(N)
    if N < 0:
        raise ValueError("moment count must be non-negative")
    key = (m, scheme)
    with _moment_lock:
        hit = _moment_cache.get(key)
        if hit is not None and hit.max_index >= N:
            _moment_cache.move_to_end(key)
            return MomentTable(m, N, hit.values[: N + 1], hit.exact)
    if m.kind == "lebesgue":
        values = 1.0 / np.arange(1.0, N + 2.0)
        exact = True
    elif m.kind == "atomic":
        values = _atomic_moments(m.atom_locations, m.atom_masses, N)
        exact = True
    else:
        gamma, delta, c = m.density_params
        if delta == 0.0:
            values = c * special.beta(np.arange(1.0, N + 2.0), gamma + 1.0)
            exact = True
        else:
            nodes = measure_nodes(m, scheme)
            values = _backend.power_sums(nodes.log_t, nodes.weights, N)
            exact = False
    values = np.asarray(values, dtype=float)
    values.setflags(write=False)
    table = MomentTable(m, N, values, exact)
    with _moment_lock:
        _moment_cache[key] = table
        _moment_cache.move_to_end(key)
        while len(_moment_cache) > _CACHE_SIZE:
            _moment_cache.popitem(last=False)
    return table


# ---------------------------------------------------------------------------
# Carleson traces

DEFAULT_GRID_LEVELS = 20
VERDICT_WINDOW = 10
VERDICT_SLOPE = 0.02
VERDICT_SPREAD = 1.5


def dyadic_grid(J: int = DEFAULT_GRID_LEVELS) -> np.ndarray:
    """``t_j = 1 - 2^-j`` for ``j = 0..J``."""
    return 1.0 - np.ldexp(1.0, -np.arange(J + 1))


def trace_is_bounded(values, window: int = VERDICT_WINDOW, slope_max: float = VERDICT_SLOPE,
                     spread_max: float = VERDICT_SPREAD) -> tuple[bool, float, float]:
    """Empirical verdict on a trace sampled at consecutive dyadic levels.

    Bounded when the last ``window`` values vanish somewhere, or when the
    least-squares slope of ``log(value)`` per level is below ``slope_max``
    and no later value exceeds an earlier one by a factor ``spread_max``.
    Returns ``(bounded, slope, spread)``.
    """
    tail = np.asarray(values, dtype=float)[-window:]
    if tail.size < 2:
        raise ValueError("trace too short for a verdict")
    if np.any(tail <= 0.0):
        return True, float("-inf"), 0.0
    logs = np.log(tail)
    j = np.arange(tail.size, dtype=float)
    slope = float(np.polyfit(j, logs, 1)[0])
    # forward spread: largest growth factor from an earlier to a later point
    running_min = np.minimum.accumulate(logs)
    spread = float(np.exp(np.max(logs[1:] - running_min[:-1])))
    spread = max(spread, 1.0)
    return (slope < slope_max and spread < spread_max), slope, spread


def _log_factor(t):
    return np.log(2.0 / (1.0 - t))


def log_carleson_constant(m: Measure, alpha: float, s: float, grid=None) -> CarlesonTrace:
    """Sup over ``grid`` of ``mu([t, 1)) (log(2/(1-t)))^alpha / (1-t)^s``.

    The default grid is ``1 - 2^-j``, ``j = 0..20``, with atom locations up to
    ``1 - 2^-20`` merged in so that atoms between grid points are seen at
    their largest ratio.  The verdict uses the dyadic points only.
    """
    if s <= 0:
        raise ValueError("Carleson exponent s must be positive")
    if alpha < 0:
        raise ValueError("log exponent alpha must be non-negative")
    if grid is None:
        dyadic = dyadic_grid()
        full = dyadic
        if m.kind == "atomic":
            loc = m.atom_locations
            full = np.union1d(dyadic, loc[loc <= dyadic[-1]])
    else:
        full = np.asarray(grid, dtype=float)
        if full.size == 0:
            raise ValueError("empty Carleson grid")
        if np.any((full < 0) | (full >= 1)):
            raise ValueError("Carleson grid points must lie in [0, 1)")
        dyadic = full
    def ratio(points):
        tails = np.array([tail_mass(m, t) for t in points])
        vals = tails / (1.0 - points) ** s
        if alpha:
            vals = vals * _log_factor(points) ** alpha
        return vals

    values = ratio(full)
    verdict_values = values if dyadic is full else ratio(dyadic)
    if verdict_values.size >= 2:
        bounded, slope, spread = trace_is_bounded(verdict_values)
    else:
        bounded, slope, spread = True, 0.0, 1.0
    return CarlesonTrace(full, values, float(values.max()), bounded, slope, spread, float(s), float(alpha))


def carleson_constant(m: Measure, s: float, grid=None) -> CarlesonTrace:
    """Sup over ``grid`` of ``mu([t, 1)) / (1 - t)^s``; see :func:`log_carleson_constant`."""
    return log_carleson_constant(m, 0.0, s, grid)


def log_weight_transform(m: Measure, alpha: float) -> Measure:
    """The measure ``(log(2/(1-t)))^alpha dmu(t)``."""
    alpha = float(alpha)
    if m.kind == "atomic":
        return Measure.atomic((t, c * math.log(2.0 / (1.0 - t)) ** alpha) for t, c in m.atoms)
    gamma, delta, c = m.density_params
    return Measure.density(gamma, delta + alpha, c)


# ---------------------------------------------------------------------------
# literals

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


class _Scanner:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def fail(self, message):
        raise MeasureParseError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip_ws()
        if not self.text.startswith(ch, self.pos):
            self.fail(f"expected {ch!r}")
        self.pos += len(ch)

    def peek(self, ch):
        self.skip_ws()
        return self.text.startswith(ch, self.pos)

    def number(self) -> float:
        self.skip_ws()
        match = _NUMBER.match(self.text, self.pos)
        if match is None:
            self.fail("expected a decimal number")
        self.pos = match.end()
        return float(match.group())  # correctly rounded

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")


def parse_measure(text: str) -> Measure:
    """Parse ``lebesgue``, ``atomic:[(t,c),...]`` or ``density:gamma=g,delta=d,c=c``.

    ``delta`` and ``c`` may be omitted (defaults 0 and 1).  Errors raise
    :class:`MeasureParseError` with the offending offset.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    head = re.compile(r"[a-z]+").match(text, sc.pos)
    if head is None:
        sc.fail("expected a measure kind")
    kind = head.group()
    sc.pos = head.end()
    if kind == "lebesgue":
        sc.end()
        return Measure.lebesgue()
    if kind == "atomic":
        sc.expect(":")
        sc.expect("[")
        atoms = []
        while True:
            sc.expect("(")
            start = sc.pos
            t = sc.number()
            sc.expect(",")
            c = sc.number()
            sc.expect(")")
            if not (0.0 <= t < ATOM_LIMIT) or not c > 0:
                raise MeasureParseError("atom outside [0, 1) or with non-positive mass", text, start)
            atoms.append((t, c))
            if sc.peek(","):
                sc.expect(",")
                continue
            break
        sc.expect("]")
        sc.end()
        return Measure.atomic(atoms)
    if kind == "density":
        sc.expect(":")
        params = {}
        while True:
            sc.skip_ws()
            key = re.compile(r"[a-z]+").match(text, sc.pos)
            if key is None or key.group() not in ("gamma", "delta", "c"):
                sc.fail("expected one of gamma, delta, c")
            if key.group() in params:
                sc.fail(f"repeated parameter {key.group()!r}")
            sc.pos = key.end()
            sc.expect("=")
            start = sc.pos
            params[key.group()] = (sc.number(), start)
            if sc.peek(","):
                sc.expect(",")
                continue
            break
        sc.end()
        if "gamma" not in params:
            raise MeasureParseError("density needs gamma", text, len(text))
        gamma, gpos = params["gamma"]
        if not gamma > -1:
            raise MeasureParseError("gamma must exceed -1", text, gpos)
        c, cpos = params.get("c", (1.0, 0))
        if not c > 0:
            raise MeasureParseError("c must be positive", text, cpos)
        return Measure.density(gamma, params.get("delta", (0.0, 0))[0], c)
    raise MeasureParseError(f"unknown measure kind {kind!r}", text, head.start())


def format_measure(m: Measure) -> str:
    """Literal that :func:`parse_measure` maps back to ``m`` (``repr`` floats round-trip)."""
    if m.kind == "lebesgue":
        return "lebesgue"
    if m.kind == "atomic":
        return "atomic:[" + ",".join(f"({t!r},{c!r})" for t, c in m.atoms) + "]"
    return f"density:gamma={m.gamma!r},delta={m.delta!r},c={m.scale!r}"
