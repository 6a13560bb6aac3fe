"""Discrete Fourier-Bessel (Hankel) transform and related diagnostics.

The transform F(f)(y) = int f(x) j_a(2 pi x y) dmu_a(x) is self-inverse under
this normalization and an isometry of the weighted L2 space; discretized on a
quadrature grid it becomes a dense matrix acting on sampled values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .grid import RadialFunction, RadialGrid, make_grid, norm, weighted_norm
from .special import bessel_j, check_alpha


@dataclass
class OperatorMatrix:
    """Dense discretization of an operator acting on sampled values.

    entries[i, k] multiplies the sample at in_grid node k and accumulates at
    out_grid node i; quadrature weights of the input grid are already folded
    into the entries.
    """

    entries: np.ndarray
    in_grid: RadialGrid
    out_grid: RadialGrid

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.shape != (self.out_grid.size, self.in_grid.size):
            raise ValueError("matrix shape does not match the grids")

    @property
    def shape(self):
        return self.entries.shape

    def apply(self, f: RadialFunction) -> RadialFunction:
        if f.grid.size != self.in_grid.size or not np.array_equal(
            f.grid.nodes, self.in_grid.nodes
        ):
            raise ValueError("function grid does not match the operator input grid")
        return RadialFunction(self.out_grid, self.entries @ f.values)

    def kernel(self):
        """Underlying integral kernel N(y_i, x_k) (input weights divided out)."""
        return self.entries / self.in_grid.weights[None, :]


def hankel_matrix(grid_in: RadialGrid, grid_out: RadialGrid) -> OperatorMatrix:
    """Matrix M with M[i, k] = j_a(2 pi y_i x_k) w_k."""
    if not grid_in.same_alpha(grid_out):
        raise ValueError("input and output grids must share the same order")
    a = grid_in.alpha
    arg = 2.0 * np.pi * np.outer(grid_out.nodes, grid_in.nodes)
    entries = bessel_j(a, arg.ravel()).reshape(arg.shape) * grid_in.weights[None, :]
    return OperatorMatrix(entries, grid_in, grid_out)


def hankel_transform(f: RadialFunction, grid_out=None, matrix=None) -> RadialFunction:
    """Apply the transform to sampled values, building the matrix if needed."""
    if matrix is None:
        matrix = hankel_matrix(f.grid, grid_out if grid_out is not None else f.grid)
    return matrix.apply(f)


def inverse_hankel(F: RadialFunction, grid_out=None, matrix=None) -> RadialFunction:
    """Inverse transform; the kernel is the same because F_a is self-inverse."""
    return hankel_transform(F, grid_out=grid_out, matrix=matrix)


def dilate(f: RadialFunction, lam, tail_tol=1e-10) -> RadialFunction:
    """Samples of lam^-(a+1) f(x / lam), resampled by spline interpolation.

    For lam > 1 the rescaled support may exit the grid; a truncation warning
    is raised when the discarded samples carry mass above tail_tol.
    """
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("dilation factor must be positive")
    if lam == 1.0:
        return RadialFunction(f.grid, f.values.copy())
    a = f.grid.alpha
    x = f.grid.nodes / lam
    # lam > 1 spreads the support past the radius; lam < 1 asks for samples
    # of f beyond the grid, where the spline extends by zero.  Either way the
    # result is trustworthy only if f has decayed past the cut below.
    cut = f.grid.radius / lam if lam > 1.0 else f.grid.radius * lam
    tail = np.abs(f.values[f.grid.nodes > cut])
    if tail.size and tail.max() > tail_tol:
        import warnings

        warnings.warn(
            "dilation pushes support beyond the grid radius; tail truncated",
            RuntimeWarning,
            stacklevel=2,
        )
    vals = f.spline()(x) / lam ** (a + 1.0)
    return RadialFunction(f.grid, vals)


def heisenberg_ratio(f: RadialFunction, matrix=None) -> float:
    """Uncertainty product ||x f|| ||y F(f)|| / (c ||f||^2) with c = (a+1)/(2 pi).

    Equals 1 for the self-reciprocal Gaussian exp(-pi x^2) and is >= 1 for
    every admissible f; invariant under dilation.
    """
    nf = norm(f, 2)
    if nf == 0.0:
        raise ValueError("the zero function has no uncertainty ratio")
    a = f.grid.alpha
    F = hankel_transform(f, matrix=matrix)
    c = (a + 1.0) / (2.0 * np.pi)
    return weighted_norm(f, 1.0) * weighted_norm(F, 1.0) / (c * nf**2)


class HankelTransform(BaseEstimator, TransformerMixin):
    """Scikit-learn style transformer applying the discrete Hankel transform.

    Rows of X are functions sampled at the grid nodes (use `grid_.nodes` after
    fitting to sample).  transform and inverse_transform coincide because the
    continuous transform is self-inverse under this normalization.

    Parameters
    ----------
    alpha : float, order of the transform (> -1/2)
    radius : float, truncation radius of the domain
    num_nodes : int, quadrature nodes
    panels : int or None, composite-rule panel count
    """

    def __init__(self, alpha=0.0, radius=8.0, num_nodes=1024, panels=None):
        self.alpha = alpha
        self.radius = radius
        self.num_nodes = num_nodes
        self.panels = panels

    def fit(self, X=None, y=None):
        check_alpha(self.alpha)
        self.grid_ = make_grid(self.alpha, self.radius, self.num_nodes, self.panels)
        self.matrix_ = hankel_matrix(self.grid_, self.grid_)
        self.n_features_in_ = self.grid_.size
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        X = check_array(X, ensure_2d=True, dtype=float)
        if X.shape[1] != self.grid_.size:
            raise ValueError(
                f"X has {X.shape[1]} columns, grid has {self.grid_.size} nodes"
            )
        return X @ self.matrix_.entries.T

    def inverse_transform(self, X):
        return self.transform(X)

    def sample(self, fn):
        """Sample a callable on the fitted grid as a RadialFunction."""
        check_is_fitted(self, "grid_")
        return RadialFunction.from_callable(self.grid_, fn)
