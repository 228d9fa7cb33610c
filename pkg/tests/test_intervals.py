from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from asymean import intervals


def mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(7, 2), Fraction(250)])
def test_polygamma_enclosure_contains_reference(m, x):
    ctx = intervals.context(128)
    v = intervals.polygamma_interval(ctx, m, x)
    lo, hi = intervals.bounds(v)
    with mpmath.workprec(400):
        ref = mpmath.psi(m, mp(x))
        assert mp(lo) <= ref <= mp(hi)
        assert (hi - lo) <= abs(Fraction(*mpmath.libmp.to_rational(ref._mpf_))) / 2 ** 110


def test_polygamma_needs_positive_argument():
    with pytest.raises(ValueError):
        intervals.polygamma_interval(intervals.context(), 1, 0)


def test_loggamma_and_log():
    ctx = intervals.context(128)
    lo, hi = intervals.bounds(intervals.loggamma_interval(ctx, Fraction(5)))
    with mpmath.workprec(300):
        assert mp(lo) <= mpmath.log(24) <= mp(hi)
    with pytest.raises(ValueError):
        intervals.log_interval(ctx, 0)


def test_power_interval():
    ctx = intervals.context(128)
    # integer exponents: one outward rounding of the exact rational power
    lo, hi = intervals.bounds(intervals.power_interval(ctx, Fraction(-2, 3), 3))
    assert lo <= Fraction(-8, 27) <= hi and hi - lo <= Fraction(1, 2 ** 126)
    lo, hi = intervals.bounds(intervals.power_interval(ctx, Fraction(8), Fraction(1, 3)))
    assert lo <= 2 <= hi and hi - lo < Fraction(1, 2 ** 120)


def test_format_interval_rounds_outward():
    ctx = intervals.context(128)
    v = intervals.from_fraction(ctx, Fraction(1, 3))
    assert intervals.format_interval(v, 5) == "[3.3333e-1, 3.3334e-1]"
    assert intervals.format_interval(-v, 3) == "[-3.34e-1, -3.33e-1]"
    assert intervals.format_interval(Fraction(2, 3), 3) == "[6.67e-1, 6.67e-1]"
    assert intervals.format_interval(Fraction(0), 3) == "[0, 0]"


def test_context_precision_floor():
    with pytest.raises(ValueError):
        intervals.context(8)


def test_hull_and_abs():
    ctx = intervals.context(64)
    h = intervals.hull(ctx, Fraction(-1, 2), Fraction(3, 4))
    assert intervals.bounds(h) == (Fraction(-1, 2), Fraction(3, 4))
    assert intervals.bounds(intervals.abs_interval(ctx, h)) == (0, Fraction(3, 4))
    assert intervals.contains(h, 0) and not intervals.contains(h, 1)
