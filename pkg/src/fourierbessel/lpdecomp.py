"""Dyadic smooth decomposition and the pair of operators splitting the
identity into a low-pass part K and its complement L.

The building block is a smooth cutoff psi_0 (1 on [0,1], supported in [0,2]);
its transform phi is computed once by quadrature and tabulated.  K acts by
K f = sum_j psi_j (phi_j * f) and L f = f - K f summed against the same
partition, so K + L = I holds exactly by construction.  The kernels A and B
of K and of the transform-side L are evaluated through the generalized
translation and feed Schur-test bounds; restricted to thin sets those Schur
integrals scale linearly in the thinness level.
"""

from __future__ import annotations

import numpy as np

from .grid import RadialFunction, RadialGrid, _interior_panel
from .intervals import IntervalSet, lebesgue
from .localization import op_norm
from .special import bessel_j, check_alpha
from .thin import is_thin
from .transform import OperatorMatrix, hankel_matrix
from .translation import translate_callable


def _bump(t):
    out = np.zeros_like(t)
    pos = t > 0.0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def psi0(x):
    """Smooth cutoff: 1 on [0, 1], 0 beyond 2, strictly between on (1, 2)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    up = _bump(2.0 - xs)
    down = _bump(xs - 1.0)
    mid = (xs > 1.0) & (xs < 2.0)
    out = np.where(xs <= 1.0, 1.0, 0.0)
    out[mid] = up[mid] / (up[mid] + down[mid])
    return out if np.ndim(x) else float(out[0])


def psi(j, x):
    """Dyadic partition member: psi_0 at j = 0, telescoped dilates beyond.

    Supported in [2^(j-1), 2^(j+1)] for j >= 1; the partial sums telescope to
    psi_0(2^-J x), hence sum exactly to 1 on [0, 2^J].
    """
    j = int(j)
    if j < 0:
        raise ValueError("scale index must be >= 0")
    if j == 0:
        return psi0(x)
    xs = np.asarray(x, dtype=float)
    return psi0(xs * 2.0**-j) - psi0(xs * 2.0 ** (-j + 1))


class LittlewoodPaley:
    """Shared state for the dyadic decomposition at one order and radius.

    Tabulates phi (the transform of psi_0) densely enough to resolve its
    oscillation, with the tail dropped once it falls below tail_tol, and
    caches the discrete transform matrix per grid.
    """

    def __init__(self, alpha, radius, j_max=None, table_dx=0.01, tail_tol=1e-15):
        self.alpha = check_alpha(alpha)
        self.radius = float(radius)
        self.j_max = int(np.ceil(np.log2(self.radius))) if j_max is None else int(j_max)
        if 2.0**self.j_max < self.radius:
            raise ValueError("2^j_max must reach the grid radius")
        self.table_dx = float(table_dx)
        self.tail_tol = float(tail_tol)
        self._build_phi_table()
        self._matrices = {}

    # -- phi machinery ----------------------------------------------------

    def _quad_rule(self, x_max):
        # Panels sized so the oscillation of the kernel at frequency x_max
        # stays under ~pi per panel with 8 Gauss nodes.
        panels = max(16, int(np.ceil(4.0 * x_max)))
        xs, ws = [], []
        edges = np.linspace(0.0, 2.0, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            x, w = _interior_panel(self.alpha, lo, hi, 8) if lo > 0 else _interior_panel(
                self.alpha, 1e-12, hi, 8
            )
            xs.append(x)
            ws.append(w)
        return np.concatenate(xs), np.concatenate(ws)

    def _phi_raw(self, x, t, wpsi):
        out = np.empty_like(x)
        chunk = 200
        for i in range(0, len(x), chunk):
            xc = x[i : i + chunk]
            arg = 2.0 * np.pi * np.outer(xc, t)
            out[i : i + chunk] = bessel_j(self.alpha, arg.ravel()).reshape(arg.shape) @ wpsi
        return out

    def _build_phi_table(self):
        a = self.alpha
        x_max = 2.0**self.j_max * 2.0 * self.radius
        t, w = self._quad_rule(x_max)
        wpsi = w * psi0(t)
        # Coarse probe to find where phi has decayed for good.
        probe_x = np.arange(0.0, x_max + 0.5, 0.5)
        probe = np.abs(self._phi_raw(probe_x, t, wpsi))
        cut = x_max
        for i in range(len(probe) - 1, -1, -1):
            if probe[i] > self.tail_tol:
                cut = min(probe_x[min(i + 4, len(probe) - 1)], x_max)
                break
        xs = np.arange(0.0, cut + self.table_dx, self.table_dx)
        self.phi_table_x = xs
        self.phi_table = self._phi_raw(xs, t, wpsi)
        self.phi_cutoff = float(xs[-1])
        from scipy.interpolate import make_interp_spline

        self._phi_spline = make_interp_spline(xs, self.phi_table, k=3)
        # L1 norm against the weighted measure, over the tabulated support.
        dens = np.abs(self.phi_table) * (2.0 * np.pi) ** (a + 1.0) * xs ** (2.0 * a + 1.0)
        self.phi_l1 = float(np.trapezoid(dens, xs))

    def phi_values(self, x):
        xs = np.asarray(x, dtype=float)
        out = self._phi_spline(np.clip(xs, 0.0, self.phi_cutoff))
        return np.where(xs > self.phi_cutoff, 0.0, out)

    def phi_j_callable(self, j):
        j = int(j)
        scale = 2.0**j
        amp = 2.0 ** (2.0 * (self.alpha + 1.0) * j)
        return lambda x: amp * self.phi_values(scale * np.asarray(x, dtype=float))

    def phi(self, j, grid: RadialGrid) -> RadialFunction:
        """Samples of phi_j on a grid; rejects grids too coarse for the scale."""
        spacing = float(np.median(np.diff(grid.nodes)))
        if spacing > 0.25 * 2.0 ** (-int(j)):
            raise ValueError("grid resolution insufficient for this scale")
        return RadialFunction(grid, self.phi_j_callable(j)(grid.nodes))

    def phi_j_l1(self, j, panels=400, per_panel=8):
        """L1 norm of phi_j by an independent composite rule (not substitution)."""
        hi = self.phi_cutoff * 2.0 ** (-int(j))
        fn = self.phi_j_callable(j)
        edges = np.linspace(0.0, hi, panels + 1)
        total = 0.0
        for lo, up in zip(edges[:-1], edges[1:]):
            x, w = _interior_panel(self.alpha, max(lo, 1e-12), up, per_panel)
            total += float(np.dot(w, np.abs(fn(x))))
        return total

    def fa_phi_j(self, j, xi):
        """Transform of phi_j: equals psi_0(2^-j xi) by the dilation identity."""
        return psi0(np.asarray(xi, dtype=float) * 2.0 ** (-int(j)))

    # -- kernels ----------------------------------------------------------

    def kernel_A(self, x, y, n_theta=192):
        """Kernel of K: sum over active scales of psi_j(x) T_y phi_j(x)."""
        x = float(x)
        ys = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros_like(ys)
        for j in range(self.j_max + 1):
            pj = psi(j, x)
            if pj == 0.0:
                continue
            out += pj * translate_callable(self.alpha, self.phi_j_callable(j), x, ys, n_theta)
        return out if np.ndim(y) else float(out[0])

    def kernel_B(self, x, y, n_theta=192):
        """Kernel of the transform-side L, by the defining telescoped sum."""
        x = float(x)
        ys = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros_like(ys)
        prev = np.zeros_like(ys)
        for j in range(self.j_max + 1):
            cur = translate_callable(self.alpha, self.phi_j_callable(j), x, ys, n_theta)
            out += (cur - prev) * (1.0 - psi0(ys * 2.0**-j))
            prev = cur
        return out if np.ndim(y) else float(out[0])

    def kernel_B_identity(self, x, y, n_theta=192):
        """Same kernel through the resummed identity: shaped like A(y, x)."""
        x = float(x)
        ys = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros_like(ys)
        for k in range(1, self.j_max + 1):
            pk = psi(k, ys)
            active = pk != 0.0
            if not np.any(active):
                continue
            tr = translate_callable(
                self.alpha, self.phi_j_callable(k - 1), x, ys[active], n_theta
            )
            out[active] += pk[active] * tr
        return out if np.ndim(y) else float(out[0])

    def active_terms(self, x):
        """Number of scales whose cutoff is nonzero at x (at most three)."""
        return int(sum(1 for j in range(self.j_max + 1) if psi(j, float(x)) != 0.0))

    # -- operators --------------------------------------------------------

    def _matrix(self, grid: RadialGrid):
        key = id(grid)
        if key not in self._matrices:
            self._matrices[key] = (grid, hankel_matrix(grid, grid))
        return self._matrices[key][1]

    def _check_grid(self, grid):
        if grid.radius > 2.0**self.j_max * (1.0 + 1e-12):
            raise ValueError("grid radius exceeds 2^j_max; partition incomplete")

    def _split(self, f: RadialFunction, matrix=None):
        self._check_grid(f.grid)
        M = matrix if matrix is not None else self._matrix(f.grid)
        F = M.entries @ f.values
        low = np.zeros_like(f.values)
        high = np.zeros_like(f.values)
        x = f.grid.nodes
        for j in range(self.j_max + 1):
            pj = psi(j, x)
            if not np.any(pj):
                continue
            conv = M.entries @ (psi0(x * 2.0**-j) * F)
            low += pj * conv
            high += pj * (f.values - conv)
        return low, high

    def apply_K(self, f: RadialFunction, matrix=None) -> RadialFunction:
        low, _ = self._split(f, matrix)
        return RadialFunction(f.grid, low)

    def apply_L(self, f: RadialFunction, matrix=None) -> RadialFunction:
        _, high = self._split(f, matrix)
        return RadialFunction(f.grid, high)

    def K_matrix(self, grid: RadialGrid) -> OperatorMatrix:
        self._check_grid(grid)
        M = self._matrix(grid).entries
        x = grid.nodes
        out = np.zeros((grid.size, grid.size))
        for j in range(self.j_max + 1):
            pj = psi(j, x)
            if not np.any(pj):
                continue
            out += pj[:, None] * (M @ (psi0(x * 2.0**-j)[:, None] * M))
        return OperatorMatrix(out, grid, grid)

    def L_matrix(self, grid: RadialGrid) -> OperatorMatrix:
        K = self.K_matrix(grid)
        return OperatorMatrix(np.eye(grid.size) - K.entries, grid, grid)

    # -- Schur machinery --------------------------------------------------

    def schur_bounds(self, kernel, grid: RadialGrid, n_theta=128):
        """Row and column L1 bounds of a kernel sampled on the grid.

        kernel is 'A' or 'B'; rows integrate over the second argument with the
        grid weights, columns over the first.
        """
        fn = {"A": self.kernel_A, "B": self.kernel_B_identity}[kernel]
        rows = np.array(
            [np.dot(grid.weights, np.abs(fn(x, grid.nodes, n_theta))) for x in grid.nodes]
        )
        K = np.array([np.abs(fn(x, grid.nodes, n_theta)) for x in grid.nodes])
        cols = K.T @ np.abs(grid.weights)
        return float(rows.max()), float(cols.max())

    def _set_rule(self, S: IntervalSet, nodes_per_component=16):
        xs, ws = [], []
        for lo, hi in S.intervals:
            x, w = _interior_panel(self.alpha, max(lo, 1e-12), hi, nodes_per_component)
            xs.append(x)
            ws.append(w)
        if not xs:
            return np.array([]), np.array([])
        return np.concatenate(xs), np.concatenate(ws)

    def schur_A_on_set(self, S: IntervalSet, x_candidates=None, n_theta=192):
        """sup over x of the integral of |A(x, .)| over the set S."""
        y, w = self._set_rule(S)
        if y.size == 0:
            return 0.0
        if x_candidates is None:
            x_candidates = self._default_candidates(S)
        best = 0.0
        for x in x_candidates:
            best = max(best, float(np.dot(w, np.abs(self.kernel_A(float(x), y, n_theta)))))
        return best

    def schur_B_on_set(self, Sigma: IntervalSet, y_candidates=None, n_theta=192):
        """sup over y of the integral of |B(., y)| over the set Sigma.

        Uses the translation symmetry T_x g(y) = T_y g(x): at fixed y the
        resummed kernel in its first argument is again a short sum of
        translates centred at y.
        """
        x, w = self._set_rule(Sigma)
        if x.size == 0:
            return 0.0
        if y_candidates is None:
            y_candidates = self._default_candidates(Sigma)
        best = 0.0
        for y in y_candidates:
            y = float(y)
            acc = np.zeros_like(x)
            for k in range(1, self.j_max + 1):
                pk = psi(k, y)
                if pk == 0.0:
                    continue
                acc += pk * translate_callable(
                    self.alpha, self.phi_j_callable(k - 1), y, x, n_theta
                )
            best = max(best, float(np.dot(w, np.abs(acc))))
        return best

    def _default_candidates(self, S: IntervalSet, density=400):
        mids = [0.5 * (lo + hi) for lo, hi in S.intervals]
        dense = np.linspace(0.0, self.radius, density + 1)[1:]
        return np.unique(np.concatenate([mids, list(S.endpoints), dense]))


def thin_schur_experiment(S, Sigma, eps, grid: RadialGrid, lp: LittlewoodPaley | None = None):
    """Measure the thin-set Schur integrals and the composite norm bound.

    Requires both sets to verify as (eps, a)-thin.  When the triangle bound
    ||F_Sigma L|| + ||K E_S|| lands below 1 the annihilation certificate
    C = 1 + (1 - bound)^-1 is reported.
    """
    eps = float(eps)
    alpha = grid.alpha
    for name, s in (("S", S), ("Sigma", Sigma)):
        ok, worst, _ = is_thin(s, eps, alpha, grid.radius)
        if not ok:
            raise ValueError(f"{name} is not (eps, alpha)-thin: worst ratio {worst:.4g}")
    if lp is None:
        lp = LittlewoodPaley(alpha, grid.radius)
    M = lp._matrix(grid)
    chi_s = S.indicator(grid.nodes)
    chi_sig = Sigma.indicator(grid.nodes)
    K = lp.K_matrix(grid).entries
    KE = OperatorMatrix(K * chi_s[None, :], grid, grid)
    FL = OperatorMatrix(
        M.entries @ (chi_sig[:, None] * M.entries) @ (np.eye(grid.size) - K), grid, grid
    )
    FE = OperatorMatrix(
        (M.entries @ (chi_sig[:, None] * M.entries)) * chi_s[None, :], grid, grid
    )
    norm_ke = op_norm(KE)
    norm_fl = op_norm(FL)
    bound = norm_ke + norm_fl
    report = {
        "eps": eps,
        "alpha": alpha,
        "lebesgue_S": lebesgue(S),
        "lebesgue_Sigma": lebesgue(Sigma),
        "schur_A_on_S": lp.schur_A_on_set(S),
        "schur_B_on_Sigma": lp.schur_B_on_set(Sigma),
        "norm_KE": norm_ke,
        "norm_FL": norm_fl,
        "norm_FE": op_norm(FE),
        "composite_bound": bound,
        "certificate_C": 1.0 + 1.0 / (1.0 - bound) if bound < 1.0 else None,
    }
    return report
