"""Dyadic low/high frequency split: partition of unity, exact K + L = f,
kernel routes, Schur bounds."""

import numpy as np
import pytest

from fourierbessel.grid import RadialFunction, make_adapted_grid, make_grid, norm
from fourierbessel.lpdecomp import LittlewoodPaley, psi, psi0, thin_schur_experiment
from fourierbessel.special import bessel_j
from fourierbessel.thin import make_thin_example
from fourierbessel.intervals import IntervalSet


@pytest.fixture(scope="module")
def lp():
    return LittlewoodPaley(0.0, 8.0)


def random_profile(grid, rng):
    s = rng.uniform(0.8, 1.3)
    vals = np.exp(-np.pi * (grid.nodes / s) ** 2) * (
        1.0 + rng.standard_normal() * grid.nodes**2
    )
    f = RadialFunction(grid, vals)
    return RadialFunction(grid, vals / norm(f, 2))


def test_psi0_plateau_and_support():
    x = np.array([0.0, 0.5, 1.0, 1.5, 2.0, 3.0])
    v = psi0(x)
    assert np.array_equal(v[:3], [1.0, 1.0, 1.0])
    assert 0.0 < v[3] < 1.0
    assert v[4] == 0.0 and v[5] == 0.0


def test_partition_of_unity_exact():
    # psi0 + sum_{j=1..J} psi_j telescopes to psi0(x / 2^J): exactly 1 on [0, 2^J]
    J = 3
    x = np.linspace(0.0, 2.0**J, 4001)
    total = psi0(x) + sum(psi(j, x) for j in range(1, J + 1))
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_smoothness_of_cutoff():
    # the glue region joins C^infinity flat at both ends; check continuity
    x = np.linspace(0.9, 2.1, 10001)
    v = psi0(x)
    assert np.max(np.abs(np.diff(v))) < 1e-2
    assert np.all((v >= 0.0) & (v <= 1.0))


def test_k_plus_l_is_identity(lp, rng):
    grid = make_grid(0.0, 8.0, 512)
    for _ in range(10):
        f = random_profile(grid, rng)
        kf = lp.apply_K(f)
        lf = lp.apply_L(f)
        assert np.max(np.abs(kf.values + lf.values - f.values)) < 1e-7


def test_k_matrix_agrees_with_apply(lp, rng):
    grid = make_grid(0.0, 8.0, 256)
    f = random_profile(grid, rng)
    K = lp.K_matrix(grid)
    assert np.max(np.abs(K.apply(f).values - lp.apply_K(f).values)) < 1e-10
    L = lp.L_matrix(grid)
    assert np.max(np.abs((K.entries + L.entries) - np.eye(grid.size))) < 1e-12


def test_low_pass_reproduces_band_limited(lp):
    # a mode with frequency inside the lowest plateau passes K unchanged
    grid = make_grid(0.0, 8.0, 512)
    f = RadialFunction.from_callable(
        grid, lambda x: np.exp(-np.pi * (x / 1.5) ** 2)
    )
    kf = lp.apply_K(f)
    # F(f) concentrated well below the top scale: L-part should be tiny
    assert norm(lp.apply_L(f), 2) < 1e-5 * norm(f, 2)
    assert np.max(np.abs(kf.values - f.values)) < 1e-5


def test_phi_transform_pair(lp):
    # F(phi_j) equals the dilated cutoff psi0(2^-j xi)
    grid = make_grid(0.0, 8.0, 512)
    for j in (1, 2):
        xi = np.linspace(0.0, 7.5, 200)
        assert np.max(np.abs(lp.fa_phi_j(j, xi) - psi0(xi / 2.0**j))) == 0.0


def test_phi_l1_consistent(lp):
    # two quadratures of |phi_j| agree; the kinks of |.| at the zeros of phi
    # limit the convergence order, hence the modest tolerance
    for j in (0, 1):
        a = lp.phi_j_l1(j)
        b = lp.phi_j_l1(j, panels=300, per_panel=10)
        assert a == pytest.approx(b, rel=1e-2)


def test_kernel_b_two_routes(lp, rng):
    worst = 0.0
    for _ in range(100):
        x, y = rng.uniform(0.2, 7.5, size=2)
        worst = max(worst, abs(lp.kernel_B(x, y) - lp.kernel_B_identity(x, y)))
    assert worst < 1e-6


def test_kernel_a_row_integrable(lp):
    # Schur row bound: sup_x int_S |A(x,y)| dmu(y) finite and small for a thin S
    s = make_thin_example(0.02, 3.0, 1, 7)
    bound = lp.schur_A_on_set(s)
    assert 0.0 < bound < 1.0


def test_thin_schur_experiment_report(lp):
    eps = 0.02
    s = make_thin_example(eps, 3.0, 1, 7)
    grid = make_adapted_grid(
        0.0, 8.0, [e for p in s.intervals for e in p], per_panel=6, max_width=0.1
    )
    rep = thin_schur_experiment(s, s, eps, grid, lp=lp)
    for key in (
        "eps",
        "alpha",
        "schur_A_on_S",
        "schur_B_on_Sigma",
        "norm_KE",
        "norm_FL",
        "composite_bound",
        "certificate_C",
    ):
        assert key in rep
    assert rep["composite_bound"] < 1.0
    assert rep["certificate_C"] > 1.0
    # composite bound dominated by the triangle pieces it is built from
    assert rep["composite_bound"] == pytest.approx(
        rep["norm_KE"] + rep["norm_FL"], rel=1e-12
    )


def test_thin_schur_rejects_non_thin(lp):
    fat = IntervalSet.interval(2.0, 3.0)
    grid = make_adapted_grid(0.0, 8.0, [2.0, 3.0], per_panel=6, max_width=0.2)
    with pytest.raises(ValueError):
        thin_schur_experiment(fat, fat, 0.02, grid, lp=lp)


def test_radius_beyond_top_scale_rejected(lp):
    with pytest.raises(ValueError):
        lp._check_grid(make_grid(0.0, 20.0, 256))
