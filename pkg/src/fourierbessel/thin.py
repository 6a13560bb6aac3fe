"""Density-thin sets: checker, the divergent-measure example family, and the
covering and annulus estimates that support the thin-set annihilation result.

A set is (eps, a)-thin when its weighted density in windows [x, x+1] near the
origin and [x, x+1/x] further out never exceeds eps.  The checker scans the
window family over a critical set of positions (every set endpoint and every
endpoint-induced window position) plus a dense fallback grid.
"""

from __future__ import annotations

import numpy as np

from .intervals import IntervalSet, empirical_doubling_constant, mu_alpha, mu_alpha_interval
from .special import check_alpha


def _prefix_measure(alpha, S: IntervalSet):
    """Vectorized t -> mu_a(S intersect [0, t])."""
    a = check_alpha(alpha)
    p = 2.0 * a + 2.0
    c = (2.0 * np.pi) ** (a + 1.0) / p
    edges = np.array([e for pair in S.intervals for e in pair])
    if edges.size == 0:
        return lambda t: np.zeros_like(np.asarray(t, dtype=float))
    lows = edges[0::2]
    comp = c * (edges[1::2] ** p - lows**p)
    cum = np.concatenate([[0.0], np.cumsum(comp)])

    def prefix(t):
        ts = np.asarray(t, dtype=float)
        idx = np.searchsorted(edges, ts, side="right")
        j = idx // 2
        out = cum[np.minimum(j, len(comp))].copy()
        inside = idx % 2 == 1
        if np.any(inside):
            ji = j[inside]
            out[inside] = cum[ji] + c * (ts[inside] ** p - lows[ji] ** p)
        return out

    return prefix


def _window_ratios(alpha, S, xs, widths):
    prefix = _prefix_measure(alpha, S)
    a = check_alpha(alpha)
    p = 2.0 * a + 2.0
    c = (2.0 * np.pi) ** (a + 1.0) / p
    hi = xs + widths
    num = prefix(hi) - prefix(xs)
    den = c * (hi**p - xs**p)
    return num / den


def is_thin(S: IntervalSet, eps, alpha, radius):
    """Check the two-window thinness condition up to the given radius.

    Returns (verdict, worst_ratio, witness_window).  The far clause is
    enforced for every x > 1, the stricter of the paper's two statements of
    the definition.
    """
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    a = check_alpha(alpha)
    radius = float(radius)
    if not S:
        return True, 0.0, None
    ends = np.array(sorted(set(S.endpoints)))

    # Near clause: windows [x, x+1], x in [0, 1].
    cand = np.concatenate([[0.0, 1.0], ends, ends - 1.0])
    fallback = np.linspace(0.0, 1.0, max(1001, 10 * ends.size))
    xs1 = np.unique(np.clip(np.concatenate([cand, fallback]), 0.0, 1.0))
    r1 = _window_ratios(a, S, xs1, np.ones_like(xs1))

    # Far clause: windows [x, x+1/x], x > 1.  Endpoint-induced positions are
    # the endpoints themselves and the x solving x + 1/x = endpoint.
    e2 = ends[ends >= 2.0]
    induced = 0.5 * (e2 + np.sqrt(e2**2 - 4.0))
    fallback = np.geomspace(1.0 + 1e-9, max(radius, 1.0 + 1e-6), max(2001, 10 * ends.size))
    xs2 = np.concatenate([ends, induced, fallback])
    xs2 = np.unique(xs2[(xs2 > 1.0) & (xs2 <= radius)])
    if xs2.size:
        r2 = _window_ratios(a, S, xs2, 1.0 / xs2)
    else:
        r2 = np.array([0.0])
        xs2 = np.array([1.0])

    i1, i2 = int(np.argmax(r1)), int(np.argmax(r2))
    if r1[i1] >= r2[i2]:
        worst, wx, wwidth = float(r1[i1]), float(xs1[i1]), 1.0
    else:
        worst, wx, wwidth = float(r2[i2]), float(xs2[i2]), 1.0 / float(xs2[i2])
    return worst <= eps, worst, (wx, wx + wwidth)


def make_thin_example(eps, c, k_min, k_max) -> IntervalSet:
    """The divergent-measure thin family: union of [k, k + eps/(c k)].

    Infinite Lebesgue measure in the full family; any finite range has
    measure eps/c times a harmonic partial sum.
    """
    eps, c = float(eps), float(c)
    k_min, k_max = int(k_min), int(k_max)
    if c <= 0.0:
        raise ValueError("c must be positive")
    if k_min < 1 or k_max < k_min:
        raise ValueError("need 1 <= k_min <= k_max")
    ks = np.arange(k_min, k_max + 1, dtype=float)
    return IntervalSet(zip(ks, ks + eps / (c * ks)))


def aj_sequence(a, b, max_steps=10_000_000):
    """The covering sequence a_0 = a, a_{j+1} = a_j + 1/a_j until it exits [a, b]."""
    seq = [float(a)]
    while seq[-1] < b:
        if len(seq) > max_steps:
            raise RuntimeError("covering sequence failed to exit the interval")
        seq.append(seq[-1] + 1.0 / seq[-1])
    return seq


def covering_constant(alpha, radius=100.0, rng=0):
    """Empirical covering constant, derived from the doubling constant."""
    return empirical_doubling_constant(alpha, radius=radius, rng=rng)


def covering_check(S: IntervalSet, a, b, eps, alpha, cover_constant=None):
    """Density of a thin set over a long window against the covering bound.

    For a >= 1 the bound constant is the (empirical) doubling constant; for
    the a = 0 clause it is 1 plus that constant.
    """
    a, b = float(a), float(b)
    al = check_alpha(alpha)
    if a >= 1.0:
        if b - a < 1.0 / a:
            raise ValueError("window must satisfy b - a >= 1/a")
        steps = aj_sequence(a, b)
    elif a == 0.0:
        if b <= 1.0:
            raise ValueError("the a = 0 clause requires b > 1")
        steps = aj_sequence(1.0, max(b, 1.0 + 1e-9))
    else:
        raise ValueError("window start must be 0 or >= 1")
    if cover_constant is None:
        cover_constant = covering_constant(al, radius=max(100.0, b))
    if a == 0.0:
        cover_constant = 1.0 + cover_constant
    window = IntervalSet.interval(a, b)
    num = mu_alpha(al, S.intersection(window))
    ratio = num / (float(eps) * mu_alpha(al, window))
    return {
        "ratio": ratio,
        "bound_ok": bool(ratio <= cover_constant),
        "cover_constant": cover_constant,
        "covering_steps": len(steps),
    }


def annulus_measure_bounds(alpha, x, r):
    """The two annulus measure estimates, returned as (lhs, rhs) per regime.

    Regime 1 (r/x <= x): measure of [x - r/x, x + r/x] against (8 pi)^(a+1) r x^(2a).
    Regime 2 (r/x >= x/2): measure of [0, x + r/x] against (18 pi)^(a+1) (r/x)^(2a+2).
    Entries are None when the regime does not apply.
    """
    a = check_alpha(alpha)
    x, r = float(x), float(r)
    if x <= 0.0 or r <= 0.0:
        raise ValueError("x and r must be positive")
    q = r / x
    lhs1 = rhs1 = lhs2 = rhs2 = None
    if q <= x:
        lhs1 = mu_alpha_interval(a, max(x - q, 0.0), x + q)
        rhs1 = (8.0 * np.pi) ** (a + 1.0) * r * x ** (2.0 * a)
    if q >= x / 2.0:
        lhs2 = mu_alpha_interval(a, 0.0, x + q)
        rhs2 = (18.0 * np.pi) ** (a + 1.0) * q ** (2.0 * a + 2.0)
    return lhs1, rhs1, lhs2, rhs2
