"""Quadrature grids on [0, R] for the weighted measure and sampled functions.

A grid is a composite Gauss rule: Gauss-Jacobi on the first panel (so the
x^(2a+1) weight at the origin is handled exactly) and Gauss-Legendre with the
weight factored in elsewhere.  Weights carry units of the weighted measure,
so plain weighted sums of samples are integrals against d mu_a.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp
from scipy.interpolate import make_interp_spline

from .intervals import IntervalSet, mu_alpha_interval
from .special import check_alpha


@dataclass(frozen=True)
class RadialGrid:
    alpha: float
    radius: float
    nodes: np.ndarray
    weights: np.ndarray
    panel_edges: np.ndarray = field(default=None)

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights must have equal length")
        if np.any(self.weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if np.any(self.nodes <= 0.0) or np.any(self.nodes >= self.radius):
            raise ValueError("nodes must lie strictly inside (0, R)")

    @property
    def size(self):
        return len(self.nodes)

    def integrate(self, values):
        """Integral of sampled values against the weighted measure."""
        return float(np.dot(self.weights, values))

    def same_alpha(self, other):
        return abs(self.alpha - other.alpha) < 1e-14


def _first_panel(alpha, hi, n):
    # Gauss-Jacobi with weight (1+t)^(2a+1): exact for the measure near 0.
    t, w = sp.roots_jacobi(n, 0.0, 2.0 * alpha + 1.0)
    x = 0.5 * hi * (1.0 + t)
    weights = (2.0 * np.pi) ** (alpha + 1.0) * (0.5 * hi) ** (2.0 * alpha + 2.0) * w
    return x, weights


def _interior_panel(alpha, lo, hi, n):
    t, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * w * (2.0 * np.pi) ** (alpha + 1.0) * x ** (2.0 * alpha + 1.0)
    return x, weights


def _assemble(alpha, edges, per_panel):
    xs, ws = [], []
    for k, n in enumerate(per_panel):
        lo, hi = edges[k], edges[k + 1]
        if k == 0 and lo == 0.0:
            x, w = _first_panel(alpha, hi, n)
        else:
            x, w = _interior_panel(alpha, lo, hi, n)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def make_grid(alpha, radius, n, panels=None):
    """Composite Gauss grid with n nodes on [0, radius].

    panels defaults to n // 32 when that divides n (32-node panels), else to
    the largest power of two <= n // 16 that divides n.
    """
    a = check_alpha(alpha)
    radius = float(radius)
    n = int(n)
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if n < 16:
        raise ValueError("at least 16 nodes are required")
    if panels is None:
        if n % 32 == 0:
            panels = n // 32
        else:
            panels = 1
            p = 2
            while p <= n // 16:
                if n % p == 0:
                    panels = p
                p *= 2
    panels = int(panels)
    if n % panels != 0:
        raise ValueError(f"{panels} panels do not divide {n} nodes evenly")
    edges = np.linspace(0.0, radius, panels + 1)
    nodes, weights = _assemble(a, edges, [n // panels] * panels)
    return RadialGrid(a, radius, nodes, weights, edges)


def make_adapted_grid(alpha, radius, breakpoints, per_panel=8, max_width=None):
    """Grid whose panel edges include the given breakpoints.

    Used to make indicator functions of interval sets exact on nodes: snap
    the set endpoints into the panel structure instead of snapping the sets.
    Panels wider than max_width are subdivided.
    """
    a = check_alpha(alpha)
    radius = float(radius)
    pts = {0.0, radius}
    for b in breakpoints:
        b = float(b)
        if 0.0 < b < radius:
            pts.add(b)
    edges = sorted(pts)
    if max_width is not None:
        refined = [edges[0]]
        for hi in edges[1:]:
            lo = refined[-1]
            m = int(np.ceil((hi - lo) / max_width))
            refined.extend(np.linspace(lo, hi, m + 1)[1:].tolist())
        edges = refined
    edges = np.asarray(edges)
    nodes, weights = _assemble(a, edges, [int(per_panel)] * (len(edges) - 1))
    return RadialGrid(a, radius, nodes, weights, edges)


@dataclass
class RadialFunction:
    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.grid.nodes.shape:
            raise ValueError("values must match the grid node count")

    @classmethod
    def from_callable(cls, grid, fn):
        return cls(grid, np.asarray(fn(grid.nodes), dtype=float))

    @classmethod
    def zero(cls, grid):
        return cls(grid, np.zeros(grid.size))

    def spline(self, k=3):
        """Interpolant of the samples; evaluates to 0 beyond the grid radius."""
        return _GridSpline(self, k)

    def __add__(self, other):
        _check_same_grid(self, other)
        return RadialFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _check_same_grid(self, other)
        return RadialFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return RadialFunction(self.grid, self.values * float(c))

    __rmul__ = __mul__


class _GridSpline:
    def __init__(self, f: RadialFunction, k=3):
        self._spline = make_interp_spline(f.grid.nodes, f.values, k=k)
        self._radius = f.grid.radius

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        out = self._spline(np.clip(xs, None, self._radius))
        return np.where(xs > self._radius, 0.0, out)


def _check_same_grid(f, g):
    if f.grid is not g.grid and not (
        f.grid.size == g.grid.size and np.array_equal(f.grid.nodes, g.grid.nodes)
    ):
        raise ValueError("functions live on different grids")


def inner(f: RadialFunction, g: RadialFunction) -> float:
    _check_same_grid(f, g)
    return float(np.dot(f.grid.weights, f.values * g.values))


def norm(f: RadialFunction, p=2) -> float:
    """L^p norm against the weighted measure; p in {1, 2}."""
    if p == 2:
        return float(np.sqrt(np.dot(f.grid.weights, f.values**2)))
    if p == 1:
        return float(np.dot(f.grid.weights, np.abs(f.values)))
    raise ValueError("only p = 1 and p = 2 are supported")


def weighted_norm(f: RadialFunction, s) -> float:
    """The moment norm || x^s f || in L2 of the weighted measure."""
    s = float(s)
    if s < 0.0:
        raise ValueError("moment exponent s must be >= 0")
    x = f.grid.nodes
    return float(np.sqrt(np.dot(f.grid.weights, (x**s * f.values) ** 2)))


def norm_on_set(f: RadialFunction, s: IntervalSet) -> float:
    """L2 norm of f restricted to an interval set."""
    chi = s.indicator(f.grid.nodes)
    return float(np.sqrt(np.dot(f.grid.weights, (chi * f.values) ** 2)))


def grid_measure_check(grid: RadialGrid) -> float:
    """Relative error of the weight sum against the closed-form measure of [0, R]."""
    total = mu_alpha_interval(grid.alpha, 0.0, grid.radius)
    return abs(float(grid.weights.sum()) - total) / total
