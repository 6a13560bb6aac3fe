"""Density-thin sets: checker, example family, covering and annulus bounds."""

import numpy as np
import pytest

from fourierbessel.intervals import IntervalSet, mu_alpha, mu_alpha_interval
from fourierbessel.thin import (
    aj_sequence,
    annulus_measure_bounds,
    covering_check,
    is_thin,
    make_thin_example,
)


def test_empty_set_is_thin():
    ok, worst, witness = is_thin(IntervalSet.empty(), 0.01, 0.0, 10.0)
    assert ok and worst == 0.0 and witness is None


def test_full_interval_is_not_thin():
    ok, worst, witness = is_thin(IntervalSet.interval(2.0, 3.0), 0.5, 0.0, 10.0)
    assert not ok
    assert worst == pytest.approx(1.0, rel=1e-9)
    lo, hi = witness
    assert 1.0 < lo < 3.0 and hi == pytest.approx(lo + 1.0 / lo)


def test_eps_validation():
    with pytest.raises(ValueError):
        is_thin(IntervalSet.empty(), 1.5, 0.0, 10.0)


def test_worst_ratio_exact_small_case():
    # S = [0, h]: the near window [0,1] gives ratio mu([0,h])/mu([0,1]) = h^2
    # at alpha=0, and that window is the worst one
    s = IntervalSet.interval(0.0, 0.25)
    ok, worst, witness = is_thin(s, 0.1, 0.0, 5.0)
    assert worst == pytest.approx(0.25**2, rel=1e-9)
    assert ok  # 1/16 < 0.1
    assert not is_thin(s, 0.05, 0.0, 5.0)[0]
    assert is_thin(s, 0.0626, 0.0, 5.0)[0]


@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_example_family_is_thin(alpha):
    c = 10.0 * (2 * np.pi) ** (alpha + 1)
    s = make_thin_example(0.1, c, 50, 4000)
    ok, worst, _ = is_thin(s, 0.1, alpha, 4001.0)
    assert ok, f"worst density ratio {worst}"


def test_example_measure_is_harmonic_sum():
    s = make_thin_example(0.2, 2.0, 1, 100)
    ks = np.arange(1, 101)
    assert sum(hi - lo for lo, hi in s.intervals) == pytest.approx(
        0.1 * np.sum(1.0 / ks), rel=1e-12
    )


def test_example_validation():
    with pytest.raises(ValueError):
        make_thin_example(0.1, -1.0, 1, 10)
    with pytest.raises(ValueError):
        make_thin_example(0.1, 1.0, 5, 3)


def test_aj_sequence_exits():
    seq = aj_sequence(1.0, 10.0)
    assert seq[0] == 1.0
    assert seq[-1] >= 10.0
    diffs_ok = all(
        b == pytest.approx(a + 1.0 / a) for a, b in zip(seq, seq[1:])
    )
    assert diffs_ok


def test_covering_check_on_thin_set():
    s = make_thin_example(0.1, 10.0 * 2 * np.pi, 10, 500)
    rep = covering_check(s, 10.0, 100.0, 0.1, 0.0)
    assert rep["bound_ok"]
    assert rep["covering_steps"] > 0
    with pytest.raises(ValueError):
        covering_check(s, 10.0, 10.05, 0.1, 0.0)
    with pytest.raises(ValueError):
        covering_check(s, 0.5, 10.0, 0.1, 0.0)


def test_annulus_bounds_hold(rng):
    for _ in range(100):
        x = rng.uniform(0.2, 10.0)
        r = rng.uniform(0.05, 10.0)
        lhs1, rhs1, lhs2, rhs2 = annulus_measure_bounds(0.5, x, r)
        if lhs1 is not None:
            assert lhs1 <= rhs1 * (1 + 1e-12)
        if lhs2 is not None:
            assert lhs2 <= rhs2 * (1 + 1e-12)
        assert lhs1 is not None or lhs2 is not None


def test_annulus_regime1_formula():
    # regime 1 window is [x - r/x, x + r/x]
    x, r = 2.0, 1.0
    lhs1, _, _, _ = annulus_measure_bounds(0.0, x, r)
    assert lhs1 == pytest.approx(mu_alpha_interval(0.0, x - r / x, x + r / x))
