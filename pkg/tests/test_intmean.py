from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymean.catalog import mean_of, parse_entry
from asymean.coeffield import DEFAULT_TABLE as T, SymbolTable, bernoulli, parse_coefficient
from asymean.errors import ExponentError, SymbolTableError, TruncationError
from asymean.intmean import (
    MeanSpec,
    c_bar_coeffs,
    c_coeffs,
    c_prime_coeffs,
    d_coeffs,
    iterate_mean,
    log_identity_residual,
    mean_expand,
    mean_expand_log,
    mean_expand_standard,
)
from asymean.series import AsymptoticSeries
from asymean.solver import compose

from conftest import small_fractions

alpha, beta, s, t, r = T.symbols("alpha", "beta", "s", "t", "r")
SPEC = MeanSpec.symbolic(T)


def P(text):
    return parse_coefficient(text, T)


def power(u):
    return AsymptoticSeries([1], u, exact=True)


def digamma_series(N):
    """log x + x^-1 sum (-1)^n B_{n+1}/(n+1) x^-n, built directly from Bernoulli numbers."""
    return AsymptoticSeries([Fraction((-1) ** n) * bernoulli(n + 1) / (n + 1) for n in range(N + 1)], -1,
                            log_coeff=1)


# -- integrated coefficients -----------------------------------------------------


def test_c_coefficients_of_power():
    """c_n = binom(r, n) h_n / (n+1) for f = x^r."""
    c = c_coeffs(AsymptoticSeries([1], r, exact=True), SPEC, 3)
    assert c[0] == 1
    assert c[1] == r * (s + t) / 2
    assert c[2] == r * (r - 1) / 2 * (s * s + s * t + t * t) / 3


def test_c_coefficient_identity_function():
    c = c_coeffs(power(1), SPEC, 4)
    assert c[:2] == [T.one, (s + t) / 2] and all(x == 0 for x in c[2:])


def test_c_coeffs_require_unit_leading_coefficient():
    with pytest.raises(ExponentError):
        c_coeffs(AsymptoticSeries([2], 1, exact=True), SPEC, 2)


def test_d_coefficients():
    d = d_coeffs(SPEC, 3)
    assert d[0] == 1
    assert d[1] == -(s + t) / 2
    assert d[2] == (s * s + s * t + t * t) / 3


def test_d_matches_mean_value_of_reciprocal():
    """The mean value of 1/x is x^-1 sum d_n x^-n."""
    assert c_coeffs(power(-1), SPEC, 5) == d_coeffs(SPEC, 5)


@pytest.mark.parametrize("u", [-1, 0, 1, 2])
def test_split_form_equals_single_formula(u):
    f = AsymptoticSeries([1, Fraction(1, 2), -3, 2, Fraction(1, 5), 7, 1, 1], u)
    assert c_bar_coeffs(f, SPEC, 7) == c_coeffs(f, SPEC, 7)


def test_c_prime_vanishes_below_threshold():
    f = AsymptoticSeries([1, 2, 3, 4, 5], 1)
    cp = c_prime_coeffs(f, SPEC, 4)
    assert cp[0] == cp[1] == cp[2] == 0 and not cp[3].is_zero()


def test_split_form_needs_integer_exponent():
    with pytest.raises(ExponentError):
        c_bar_coeffs(AsymptoticSeries([1], Fraction(1, 2)), SPEC, 2)
    with pytest.raises(ExponentError):
        c_prime_coeffs(AsymptoticSeries([1], -2), SPEC, 2)


# -- the standard path -----------------------------------------------------------


def test_generalized_logarithmic_mean():
    m = mean_expand_standard(AsymptoticSeries([1], r, exact=True), SPEC, 4)
    a = m.coeffs
    assert a[0] == 1 and a[1] == alpha
    assert a[2] == (r - 1) * beta ** 2 / 6
    assert a[3] == -(r - 1) * alpha * beta ** 2 / 6
    assert a[4] == (r - 1) * beta ** 2 * ((-2 * r ** 2 - 5 * r + 13) * beta ** 2 + 60 * alpha ** 2) / 360


@pytest.mark.parametrize(
    "u, row",
    [
        (-1, ["-1/3*beta^2", "1/3*alpha*beta^2", "-1/45*beta^2*(15*alpha^2 + 4*beta^2)"]),   # L
        (-2, ["-1/2*beta^2", "1/2*alpha*beta^2", "-1/8*beta^2*(4*alpha^2 + beta^2)"]),       # G
    ],
)
def test_classical_mean_rows(u, row):
    a = mean_expand_standard(power(u), SPEC, 4).coeffs
    assert a[:2] == [T.one, alpha]
    assert a[2:] == [P(x) for x in row]


def test_arithmetic_mean_is_exact():
    a = mean_expand_standard(power(1), SPEC, 6).coeffs
    assert a == [T.one, alpha] + [T.zero] * 5


def test_generalized_mean_specializations_match_rows():
    general = mean_expand_standard(AsymptoticSeries([1], r, exact=True), SPEC, 4).coeffs
    for rv, u in [(-2, -2), (-1, -1)]:
        special = mean_expand_standard(power(u), SPEC, 4).coeffs
        assert [c.subs({"r": rv}) for c in general] == special


def test_two_term_rational_function():
    """f = x^-2 + x^-3."""
    m = mean_expand_standard(AsymptoticSeries([1, 1], -2, exact=True), SPEC, 5)
    expected = ["1", "alpha", "-1/2*beta^2", "1/4*beta^2*(-1 + 2*alpha)",
                "-1/8*beta^2*(-3 - 4*alpha + 4*alpha^2 + beta^2)",
                "1/16*beta^2*(8*alpha^3 - 12*alpha^2 + 6*alpha*(-3 + beta^2) - 3*(3 + beta^2))"]
    assert m.coeffs == [P(x) for x in expected]


def test_two_term_rational_function_at_zero_alpha():
    """Truncations I_4, I_5, I_6 at s = -5, t = 5 (alpha = 0, beta^2 = 25)."""
    m = mean_expand_standard(AsymptoticSeries([1, 1], -2, exact=True), MeanSpec.numeric(-5, 5), 7)
    b2 = Fraction(25)
    assert list(m.series.coeffs) == [
        1, 0, -b2 / 2, -b2 / 4, -b2 * (b2 - 3) / 8, -3 * b2 * (b2 + 3) / 16,
        b2 * (27 + 18 * b2 - 2 * b2 ** 2) / 32,
        -b2 * (81 + 78 * b2 + 10 * b2 ** 2) / 64,
    ]


def test_general_exponent_low_order_coefficients():
    table = SymbolTable(("alpha", "beta", "s", "t", "u", "b1", "b2"))
    u, b1, b2, a_, b_ = table.symbols("u", "b1", "b2", "alpha", "beta")
    spec = MeanSpec.symbolic(table)
    m = mean_expand_standard(AsymptoticSeries([table.one, b1, b2], u, exact=True, table=table), spec, 3)
    a = m.coeffs
    assert a[0] == 1 and a[1] == a_
    assert a[2] == (u - 1) * b_ ** 2 / 6
    assert a[3] == -(u - 1) * b_ ** 2 * (u * a_ + b1) / (6 * u)


def test_scaled_function_has_same_mean():
    f = AsymptoticSeries([1, 1], -2, exact=True)
    g = AsymptoticSeries([-3, -3], -2, exact=True)
    mf = mean_expand_standard(f, SPEC, 5)
    mg = mean_expand_standard(g, SPEC, 5)
    assert mf.series == mg.series and mg.scale == -3


def test_mean_needs_series_only_to_order_n_minus_one():
    f = AsymptoticSeries([1, 1, 0, 0], -2)          # known to order 3
    assert mean_expand_standard(f, SPEC, 4).order == 4
    with pytest.raises(TruncationError):
        mean_expand_standard(f, SPEC, 5)


def test_mean_solves_defining_equation():
    """f(I_f(x)) reproduces the mean value C(x) to the computed order."""
    f = AsymptoticSeries([1, 2, -1, 3], Fraction(3, 2), exact=True)
    N = 6
    m = mean_expand_standard(f, SPEC, N)
    lhs = compose(f, m.series, N)
    assert lhs.exponent == f.exponent
    assert lhs.coeff_list(N) == c_coeffs(f, SPEC, N)


@given(st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(-5, 3)]),
       st.lists(small_fractions(), min_size=5, max_size=5),
       small_fractions(), small_fractions(nonzero=True))
def test_mean_invariants_property(u, tail, sv, width):
    """a_0 = 1, a_1 = alpha, and f(I_f) = C for numeric endpoints."""
    f = AsymptoticSeries([1] + tail, u, exact=True)
    spec = MeanSpec.numeric(sv, sv + width)
    m = mean_expand_standard(f, spec, 5)
    assert m.series.coeffs[0] == 1 and m.series.coeffs[1] == sv + width / 2
    assert compose(f, m.series, 5).coeff_list(5) == c_coeffs(f, spec, 5)


def test_iterated_means_gain_zeros():
    runs = iterate_mean(AsymptoticSeries([1], -2, exact=True), SPEC, 7, 3)
    for k, m in enumerate(runs[1:], start=2):
        a = m.coeffs
        assert a[0] == 1 and a[1] == alpha
        zeros = 2 * (k - 1)
        assert all(a[n].is_zero() for n in range(2, 2 + zeros)), k
        assert not a[2 + zeros].is_zero()


def test_exponent_zero_rejected():
    with pytest.raises(ExponentError, match="u = 0"):
        mean_expand_standard(AsymptoticSeries([1, 1], 0), SPEC, 2)


def test_exponent_symbol_clash():
    with pytest.raises(SymbolTableError):
        mean_expand_standard(AsymptoticSeries([1], s, exact=True), SPEC, 2)
    with pytest.raises(SymbolTableError):
        mean_of(parse_entry("power:r=s"), SPEC, 2)


def test_display_in_endpoint_variables():
    m = mean_expand_standard(power(-2), MeanSpec.symbolic(T, "st"), 2)
    assert m.coeffs[1] == (s + t) / 2
    assert m.coeffs[2] == -(t - s) ** 2 / 8


# -- the log path ----------------------------------------------------------------


def test_identric_mean():
    m = mean_expand_log(AsymptoticSeries([0], -1, log_coeff=1, exact=True), SPEC, 6)
    expected = ["1", "alpha", "-1/6*beta^2", "1/6*alpha*beta^2", "-1/360*beta^2*(60*alpha^2 + 13*beta^2)",
                "1/120*alpha*beta^2*(20*alpha^2 + 13*beta^2)",
                "-1/45360*beta^2*(7560*alpha^4 + 9828*alpha^2*beta^2 + 737*beta^4)"]
    assert m.coeffs == [P(x) for x in expected]


def test_identric_is_limit_of_generalized_mean():
    general = mean_expand_standard(AsymptoticSeries([1], r, exact=True), SPEC, 6).coeffs
    identric = mean_of(parse_entry("log"), SPEC, 6).coeffs
    assert [c.subs({"r": 0}) for c in general] == identric


def test_digamma_mean():
    m = mean_expand_log(digamma_series(4), SPEC, 4)
    expected = ["1", "alpha", "-1/6*beta^2", "1/12*beta^2*(2*alpha - 1)",
                "-1/360*beta^2*(60*alpha^2 - 60*alpha + 13*beta^2 + 5)"]
    assert m.coeffs == [P(x) for x in expected]


def test_log_path_identity():
    f = digamma_series(8)
    m = mean_expand_log(f, SPEC, 8)
    assert all(c.is_zero() for c in log_identity_residual(f, m, 8))


def test_log_path_accepts_deeper_tails():
    """log x + x^-3: a tail starting at x^-3 is padded with zeros."""
    f = AsymptoticSeries([1], -3, log_coeff=1, exact=True)
    m = mean_expand_log(f, SPEC, 6)
    assert all(c.is_zero() for c in log_identity_residual(f, m, 6))
    # a term x^-k first reaches a_{k+2}; below that the mean is the identric one
    identric = mean_of(parse_entry("log"), SPEC, 6).coeffs
    assert m.coeffs[:5] == identric[:5] and m.coeffs[5] != identric[5]


def test_log_path_rejects_positive_tail():
    with pytest.raises(ExponentError):
        mean_expand_log(AsymptoticSeries([1], 1, log_coeff=1, exact=True), SPEC, 3)


def test_router():
    assert mean_expand(digamma_series(3), SPEC, 3).series == mean_expand_log(digamma_series(3), SPEC, 3).series
    assert mean_expand(power(-1), SPEC, 3).series == mean_expand_standard(power(-1), SPEC, 3).series
    with pytest.raises(ExponentError):
        mean_expand_standard(digamma_series(3), SPEC, 3)
    with pytest.raises(ExponentError):
        mean_expand_log(power(-1), SPEC, 3)


def test_numeric_endpoints_must_differ():
    with pytest.raises(ValueError):
        MeanSpec.numeric(1, 1)
