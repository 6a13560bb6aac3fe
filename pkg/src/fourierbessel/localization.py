"""Time and frequency projections, the composite localization operator,
its Hilbert-Schmidt and operator norms, and annihilation certificates.

The composite of the frequency cutoff after the time cutoff is the operator
whose norm being < 1 certifies that the pair of sets is strongly annihilating,
with explicit constants D = (1 - norm)^-1 and C = 1 + D.
"""

from __future__ import annotations

import numpy as np

from .grid import RadialFunction, RadialGrid, inner, norm, norm_on_set
from .intervals import IntervalSet, lebesgue
from .special import kappa_alpha
from .transform import OperatorMatrix, dilate, hankel_matrix


class ConvergenceError(RuntimeError):
    """Power iteration failed to settle within the iteration budget."""


def project_time(f: RadialFunction, S: IntervalSet) -> RadialFunction:
    """Multiply by the indicator of S at the grid nodes."""
    return RadialFunction(f.grid, f.values * S.indicator(f.grid.nodes))


def project_freq(f: RadialFunction, Sigma: IntervalSet, matrix=None) -> RadialFunction:
    """Conjugate of the time projection by the discrete transform."""
    if matrix is None:
        matrix = hankel_matrix(f.grid, f.grid)
    F = matrix.apply(f)
    return matrix.apply(project_time(F, Sigma))


def composite_matrix(S, Sigma, grid: RadialGrid, matrix=None) -> OperatorMatrix:
    """Dense matrix of the frequency cutoff composed with the time cutoff."""
    for lo, hi in list(S.intervals) + list(Sigma.intervals):
        if hi > grid.radius * (1.0 + 1e-12):
            raise ValueError("interval sets must lie inside [0, grid radius]")
    if matrix is None:
        matrix = hankel_matrix(grid, grid)
    chi_s = S.indicator(grid.nodes)
    chi_sig = Sigma.indicator(grid.nodes)
    entries = matrix.entries @ (chi_sig[:, None] * matrix.entries) * chi_s[None, :]
    return OperatorMatrix(entries, grid, grid)


def reduced_composite(S, Sigma, grid: RadialGrid, matrix=None) -> OperatorMatrix:
    """The composite with the outer transform stripped off.

    Conjugating by the (unitary) transform leaves both the operator and the
    Hilbert-Schmidt norm unchanged, but the reduced form involves no integral
    over the truncated tail beyond the grid radius, so its norms carry pure
    quadrature error.  Use this one for certificates.
    """
    for lo, hi in list(S.intervals) + list(Sigma.intervals):
        if hi > grid.radius * (1.0 + 1e-12):
            raise ValueError("interval sets must lie inside [0, grid radius]")
    if matrix is None:
        matrix = hankel_matrix(grid, grid)
    chi_s = S.indicator(grid.nodes)
    chi_sig = Sigma.indicator(grid.nodes)
    entries = chi_sig[:, None] * matrix.entries * chi_s[None, :]
    return OperatorMatrix(entries, grid, grid)


def hs_norm(M) -> float:
    """Hilbert-Schmidt norm in the weighted inner product.

    Accepts an OperatorMatrix (weights taken from its grids) or a plain
    ndarray, which is treated as unweighted and reduces to the Frobenius norm.
    """
    if isinstance(M, np.ndarray):
        return float(np.linalg.norm(M))
    w_out = M.out_grid.weights
    w_in = M.in_grid.weights
    # kernel N = entries / w_in; HS^2 = sum w_out w_in N^2
    scaled = np.sqrt(w_out)[:, None] * M.entries / np.sqrt(w_in)[None, :]
    return float(np.linalg.norm(scaled))


def _symmetrized(M) -> np.ndarray:
    if isinstance(M, np.ndarray):
        return M
    return np.sqrt(M.out_grid.weights)[:, None] * M.entries / np.sqrt(
        M.in_grid.weights
    )[None, :]


def op_norm(M, tol=1e-10, max_iter=10_000, rng=0) -> float:
    """Largest singular value via power iteration in the weighted inner product.

    The returned value never exceeds the Hilbert-Schmidt norm.  Raises
    ConvergenceError if the iteration has not settled after max_iter steps.
    """
    B = _symmetrized(M)
    G = B.T @ B
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(G.shape[0])
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(int(max_iter)):
        w = G @ v
        lam = float(np.dot(v, w))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(lam - prev) <= tol * max(lam, 1e-300):
            sigma = np.sqrt(max(lam, 0.0))
            return float(min(sigma, hs_norm(M)))
        prev = lam
    raise ConvergenceError("power iteration did not converge")


def hs_bound(alpha, S: IntervalSet, Sigma: IntervalSet) -> float:
    """Closed-form Hilbert-Schmidt bound kappa_a sqrt(2 pi |S| |Sigma|)."""
    return float(kappa_alpha(alpha) * np.sqrt(2.0 * np.pi * lebesgue(S) * lebesgue(Sigma)))


def annihilation_constants(S, Sigma, grid: RadialGrid, matrix=None):
    """Certificate triple (norm, D, C) for the pair (S, Sigma) at this resolution.

    D = (1 - norm)^-1 and C = 1 + D when the composite norm is < 1.  A norm
    >= 1 yields (norm, inf, inf): no certificate at this resolution, which is
    not evidence that the pair fails to annihilate.
    """
    comp = reduced_composite(S, Sigma, grid, matrix=matrix)
    n = op_norm(comp)
    if n >= 1.0:
        return n, float("inf"), float("inf")
    D = 1.0 / (1.0 - n)
    return n, D, 1.0 + D


def verify_strong_annihilation(f: RadialFunction, S, Sigma, C, matrix=None, slack=1e-6):
    """Check ||f|| <= C (||f on S^c|| + ||F(f) on Sigma^c||) for one function."""
    if matrix is None:
        matrix = hankel_matrix(f.grid, f.grid)
    R = f.grid.radius
    nf = norm(f, 2)
    out_time = norm_on_set(f, S.complement(R))
    out_freq = norm_on_set(matrix.apply(f), Sigma.complement(R))
    rhs = C * (out_time + out_freq)
    return {
        "norm": nf,
        "outside_time": out_time,
        "outside_freq": out_freq,
        "rhs": rhs,
        "holds": bool(nf <= rhs * (1.0 + slack) + slack),
    }


def dilate_gram(f: RadialFunction, lambdas) -> float:
    """Smallest eigenvalue of the Gram matrix of distinct dilates of f.

    Strictly positive eigenvalues are desk-scale evidence that the dilates
    are linearly independent.
    """
    lambdas = [float(l) for l in lambdas]
    if len(set(lambdas)) != len(lambdas):
        raise ValueError("dilation factors must be distinct")
    fs = [dilate(f, l) for l in lambdas]
    G = np.array([[inner(a, b) for b in fs] for a in fs])
    return float(np.linalg.eigvalsh(G)[0])
