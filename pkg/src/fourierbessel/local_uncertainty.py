"""Local uncertainty inequalities: explicit constants in both exponent
regimes and a verifier for sampled functions.

Regime 1 (0 < s < a+1):  ||F(f)||_{L2(E)} <= K(s,a) mu(E)^(s/(2(a+1))) ||x^s f||.
Regime 2 (s > a+1):      ||F(f)||_{L2(E)} <= K'(s,a) mu(E)^(1/2)
                                             ||f||^(1-(a+1)/s) ||x^s f||^((a+1)/s).

Both constants are produced by minimizing the two-term bound from which they
arise; the closed forms are kept as cross-checks, not as ground truth.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate, special as sp
from scipy.optimize import minimize_scalar

from .grid import RadialFunction, norm, norm_on_set, weighted_norm
from .intervals import IntervalSet, mu_alpha
from .special import check_alpha
from .transform import hankel_transform


def _a_coefficient(s, alpha):
    # Coefficient of the r^(a+1-s) term in the regime-1 two-term bound.
    return np.pi ** ((alpha + 1.0) / 2.0) / (
        np.sqrt(2.0**alpha * (alpha + 1.0 - s)) * sp.gamma(alpha + 1.0)
    )


def faris_K(s, alpha, minimize=True):
    """Regime-1 constant, by direct minimization of r^-s + a_c r^(a+1-s).

    The closed form is
    (a+1)/(a+1-s) * [a_c (a+1-s)/s]^(s/(a+1)).
    """
    a = check_alpha(alpha)
    s = float(s)
    if not 0.0 < s < a + 1.0:
        raise ValueError("regime 1 requires 0 < s < alpha + 1")
    ac = _a_coefficient(s, a)
    closed = (a + 1.0) / (a + 1.0 - s) * (ac * (a + 1.0 - s) / s) ** (s / (a + 1.0))
    if not minimize:
        return closed
    res = minimize_scalar(
        lambda u: np.exp(-s * u) + ac * np.exp((a + 1.0 - s) * u),
        bounds=(-40.0, 40.0),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return float(res.fun)


def moment_integral(s, alpha):
    """int dmu_a(x) / (1 + x^(2s)); finite exactly when s > a+1.

    Split at 1 with the tail mapped back by u = 1/x so both pieces are proper.
    """
    a = check_alpha(alpha)
    s = float(s)
    if s <= a + 1.0:
        raise ValueError("the moment integral diverges for s <= alpha + 1")
    c = (2.0 * np.pi) ** (a + 1.0)
    head, _ = integrate.quad(lambda x: x ** (2 * a + 1) / (1.0 + x ** (2 * s)), 0.0, 1.0)
    tail, _ = integrate.quad(
        lambda u: u ** (2 * s - 2 * a - 3) / (1.0 + u ** (2 * s)), 0.0, 1.0
    )
    return c * (head + tail)


def faris_Kprime(s, alpha, minimize=False):
    """Regime-2 constant, from the printed closed form.

    With beta = (a+1)/s in (0, 1) the bracket is beta^-beta (1-beta)^(beta-1)
    times the moment integral; minimize=True recomputes the coefficient by
    minimizing A u^beta + B u^(beta-1) numerically instead.
    """
    a = check_alpha(alpha)
    s = float(s)
    if s <= a + 1.0:
        raise ValueError("regime 2 requires s > alpha + 1")
    beta = (a + 1.0) / s
    I = moment_integral(s, a)
    if minimize:
        res = minimize_scalar(
            lambda v: np.exp(beta * v) + np.exp((beta - 1.0) * v),
            bounds=(-60.0, 60.0),
            method="bounded",
            options={"xatol": 1e-13},
        )
        coeff = float(res.fun)  # equals beta^-beta (1-beta)^(beta-1)
    else:
        coeff = beta**-beta * (1.0 - beta) ** (beta - 1.0)
    return float(np.sqrt(coeff * I) / (2.0**a * sp.gamma(a + 1.0)))


def verify_local(f: RadialFunction, E: IntervalSet, s, alpha=None, matrix=None, slack=1e-6):
    """Check the local inequality for one (f, E, s); the regime follows from s."""
    a = check_alpha(alpha if alpha is not None else f.grid.alpha)
    s = float(s)
    F = hankel_transform(f, matrix=matrix)
    lhs = norm_on_set(F, E)
    mu = mu_alpha(a, E)
    if s < a + 1.0:
        K = faris_K(s, a)
        rhs = K * mu ** (s / (2.0 * (a + 1.0))) * weighted_norm(f, s)
        regime = 1
    elif s > a + 1.0:
        K = faris_Kprime(s, a)
        beta = (a + 1.0) / s
        rhs = K * np.sqrt(mu) * norm(f, 2) ** (1.0 - beta) * weighted_norm(f, s) ** beta
        regime = 2
    else:
        raise ValueError("s = alpha + 1 sits between the regimes")
    return {
        "regime": regime,
        "s": s,
        "alpha": a,
        "constant": K,
        "lhs": lhs,
        "rhs": rhs,
        "holds": bool(lhs <= rhs * (1.0 + slack) + slack),
    }
