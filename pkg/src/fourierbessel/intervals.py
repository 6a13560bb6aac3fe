"""Finite unions of intervals in [0, inf) and the measures carried by them.

Intervals are treated as half-open [lo, hi) for the set algebra so unions and
complements are exact; the measure formulas are endpoint-insensitive.
"""

from __future__ import annotations

import json

import numpy as np

from .special import check_alpha


class IntervalSet:
    """Canonical finite union of disjoint intervals in [0, inf).

    Construction canonicalizes: intervals are sorted, merged when they touch
    or overlap, and degenerate pairs (lo == hi) are dropped.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        pairs = []
        for lo, hi in intervals:
            lo, hi = float(lo), float(hi)
            if lo < 0.0 or hi < 0.0:
                raise ValueError("interval endpoints must be >= 0")
            if hi < lo:
                raise ValueError(f"interval [{lo}, {hi}] has hi < lo")
            if hi > lo:
                pairs.append((lo, hi))
        pairs.sort()
        merged = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    @classmethod
    def empty(cls):
        return cls(())

    @classmethod
    def interval(cls, lo, hi):
        return cls([(lo, hi)])

    def __bool__(self):
        return bool(self.intervals)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        body = " U ".join(f"[{lo:g},{hi:g})" for lo, hi in self.intervals)
        return f"IntervalSet({body or 'empty'})"

    @property
    def endpoints(self):
        return tuple(e for pair in self.intervals for e in pair)

    def indicator(self, x):
        """Evaluate the characteristic function at points x (vectorized)."""
        xs = np.asarray(x, dtype=float)
        out = np.zeros(xs.shape, dtype=float)
        for lo, hi in self.intervals:
            out[(xs >= lo) & (xs < hi)] = 1.0
        return out

    def union(self, other):
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other):
        out = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo, hi = max(alo, blo), min(ahi, bhi)
                if hi > lo:
                    out.append((lo, hi))
        return IntervalSet(out)

    def complement(self, radius):
        """Complement within [0, radius]."""
        radius = float(radius)
        if radius <= 0.0:
            raise ValueError("bounding radius must be positive")
        out = []
        cursor = 0.0
        for lo, hi in self.intervals:
            if lo >= radius:
                break
            if lo > cursor:
                out.append((cursor, min(lo, radius)))
            cursor = max(cursor, hi)
        if cursor < radius:
            out.append((cursor, radius))
        return IntervalSet(out)

    def dilate(self, factor):
        """Scale every interval by a positive factor."""
        factor = float(factor)
        if factor <= 0.0:
            raise ValueError("scale factor must be positive")
        return IntervalSet([(lo * factor, hi * factor) for lo, hi in self.intervals])

    def to_json(self):
        return json.dumps([[lo, hi] for lo, hi in self.intervals])

    @classmethod
    def from_json(cls, text):
        return cls([(lo, hi) for lo, hi in json.loads(text)])


def lebesgue(s: IntervalSet) -> float:
    """Lebesgue measure: sum of interval lengths."""
    return float(sum(hi - lo for lo, hi in s.intervals))


def mu_alpha(alpha, s: IntervalSet) -> float:
    """Weighted measure (2 pi)^(a+1) x^(2a+1) dx of the set, exact antiderivative."""
    a = check_alpha(alpha)
    p = 2.0 * a + 2.0
    c = (2.0 * np.pi) ** (a + 1.0) / p
    return float(sum(c * (hi**p - lo**p) for lo, hi in s.intervals))


def mu_alpha_interval(alpha, lo, hi) -> float:
    return mu_alpha(alpha, IntervalSet.interval(lo, hi))


def doubling_ratio(alpha, lo, hi) -> float:
    """Ratio mu_a(3I)/mu_a(I) with 3I the concentric tripled interval cut to R+."""
    lo, hi = float(lo), float(hi)
    if hi <= lo:
        raise ValueError("interval must be nondegenerate")
    h = hi - lo
    tripled = IntervalSet.interval(max(lo - h, 0.0), hi + h)
    return mu_alpha(alpha, tripled) / mu_alpha_interval(alpha, lo, hi)


def empirical_doubling_constant(alpha, radius=100.0, sweep=2000, rng=None):
    """Largest doubling ratio over a randomized sweep of intervals in [0, radius]."""
    rng = np.random.default_rng(rng)
    worst = 0.0
    for _ in range(int(sweep)):
        lo = rng.uniform(0.0, radius)
        hi = lo + rng.uniform(1e-6, radius - lo + 1e-6)
        worst = max(worst, doubling_ratio(alpha, lo, min(hi, radius)))
    # Edge-anchored intervals maximize the ratio; make sure they are covered.
    for hi in np.geomspace(1e-4, radius, 200):
        worst = max(worst, doubling_ratio(alpha, 0.0, hi))
        worst = max(worst, doubling_ratio(alpha, hi * 1e-6, hi))
    return worst
