from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from asymean import intervals
from asymean.catalog import (
    WALLIS_C_PRINTED,
    WALLIS_TABLE_ORDER,
    CatalogEntry,
    catalog_listing,
    get_series,
    mean_of,
    parse_entry,
    polygamma_coeffs,
    polygamma_scale,
    wallis_c_table,
    wallis_q_table,
)
from asymean.coeffield import DEFAULT_TABLE as T, bernoulli, parse_coefficient
from asymean.errors import ExponentError, ParseError, TableBoundError, TruncationError
from asymean.intmean import MeanSpec, c_coeffs
from asymean.series import AsymptoticSeries, eval_truncated, series_to_json

alpha, beta, ap, bp, gp = T.symbols("alpha", "beta", "ap", "bp", "gp")
SPEC = MeanSpec.symbolic(T)


def P(text):
    return parse_coefficient(text, T)


# -- entry grammar ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text, kind, params",
    [
        ("power:r=1/2", "power", {"r": Fraction(1, 2)}),
        ("power:r=-2", "power", {"r": Fraction(-2)}),
        ("power:r=r", "power", {"r": "r"}),
        ("log", "log", {}),
        ("digamma", "digamma", {}),
        ("polygamma:m=3", "polygamma", {"m": 3}),
        ("ratpoly:[1, 1]@u=-2", "ratpoly", {"coeffs": (1, 1), "u": -2}),
        ("wallis_power:s=0,t=1/2", "wallis_power", {"s": 0, "t": Fraction(1, 2)}),
        ("wallis_ratio", "wallis_ratio", {"s": None, "t": None}),
        ("file:/tmp/x.json", "file", {"path": "/tmp/x.json"}),
    ],
)
def test_parse_entry(text, kind, params):
    e = parse_entry(text)
    assert e.kind == kind
    for k, v in params.items():
        assert e.param(k) == v


@pytest.mark.parametrize(
    "text, error",
    [
        ("gamma", ParseError),
        ("power", ParseError),
        ("power:r=zeta", ParseError),
        ("power:r=0", ExponentError),
        ("polygamma:m=0", ExponentError),
        ("polygamma:m=x", ParseError),
        ("ratpoly:1,2", ParseError),
        ("ratpoly:[0,1]@u=1", ExponentError),
        ("ratpoly:[1]@u=1/2", ParseError),
        ("wallis_power:s=1", ParseError),
        ("wallis_ratio:s=1,t=1", ExponentError),
        ("log:x=1", ParseError),
        ("file:", ParseError),
    ],
)
def test_parse_entry_errors(text, error):
    with pytest.raises(error):
        parse_entry(text)


def test_entry_string_round_trip():
    for text in ["power:r=1/2", "polygamma:m=2", "ratpoly:[1,1]@u=-2", "wallis_power:s=0,t=1/2", "log"]:
        e = parse_entry(text)
        assert parse_entry(str(e)) == e


def test_listing_mentions_every_entry():
    text = catalog_listing()
    for kind in ["power", "log", "digamma", "polygamma", "ratpoly", "wallis_power", "wallis_ratio", "file"]:
        assert kind in text
    wallis_line = next(line for line in text.splitlines() if line.startswith("wallis_power"))
    assert str(WALLIS_TABLE_ORDER + 1) in wallis_line.split()


# -- series ----------------------------------------------------------------------


def test_digamma_series():
    S = get_series(parse_entry("digamma"), 4)
    assert S.log_coeff == 1 and S.exponent == -1
    assert list(S.coeffs) == [Fraction(-1, 2), Fraction(-1, 12), 0, Fraction(1, 120), 0]


def test_polygamma_series_against_derivative_of_digamma():
    """psi^(m) is the m-th derivative of the digamma series, divided by its leading coefficient."""
    N = 10
    dig = [Fraction((-1) ** n) * bernoulli(n + 1) / (n + 1) for n in range(N + 2)]
    # psi'(x) = 1/x - sum_n (n+1) d_n x^(-n-2) with digamma tail x^-1 sum d_n x^-n
    deriv = {1: Fraction(1)}
    for n, d in enumerate(dig):
        deriv[n + 2] = deriv.get(n + 2, 0) - (n + 1) * d
    for m in range(1, 5):
        lam = polygamma_scale(m)
        b = polygamma_coeffs(m, N - m)
        for n, bn in enumerate(b):
            assert bn * lam == deriv.get(m + n, 0), (m, n)
        # differentiate once more for the next m
        deriv = {k + 1: -k * v for k, v in deriv.items()}


def test_polygamma_example_coefficients():
    assert polygamma_scale(3) == 2
    assert polygamma_coeffs(2, 4) == [1, 1, Fraction(1, 2), 0, Fraction(-1, 6)]


def test_polygamma_mean():
    for m in range(1, 5):
        a = mean_of(parse_entry(f"polygamma:m={m}"), SPEC, 4).coeffs
        expected = [
            "1", "alpha", f"-1/6*{m + 1}*beta^2", f"1/12*{m + 1}*(2*alpha - 1)*beta^2",
            f"1/360*{m + 1}*(2*{m}^2*beta^2 - 5*{m}*beta^2 - 13*beta^2 - 60*alpha^2 + 60*alpha + 5*{m} - 5)*beta^2",
        ]
        assert a == [P(x) for x in expected], m


def test_polygamma_mean_records_scale():
    m = mean_of(parse_entry("polygamma:m=3"), SPEC, 2)
    assert m.scale == 2


def test_ratpoly_and_power():
    S = get_series(parse_entry("ratpoly:[1,1]@u=-2"), 5)
    assert S.exact and S.exponent == -2 and S.coeff(1) == 1 and S.coeff(5) == 0
    m = mean_of(parse_entry("power:r=1"), SPEC, 3)
    assert m.coeffs == [T.one, alpha, T.zero, T.zero]


def test_file_entry(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(series_to_json(AsymptoticSeries([1, 1], -2, exact=True)))
    via_file = mean_of(parse_entry(f"file:{path}"), SPEC, 5)
    direct = mean_of(parse_entry("ratpoly:[1,1]@u=-2"), SPEC, 5)
    assert via_file.series == direct.series


def test_file_entry_truncation(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(series_to_json(AsymptoticSeries([1, 1, 1], -2)))
    assert mean_of(parse_entry(f"file:{path}"), SPEC, 3).order == 3
    with pytest.raises(TruncationError):
        mean_of(parse_entry(f"file:{path}"), SPEC, 4)


# -- Wallis tables ---------------------------------------------------------------


def test_wallis_q_table_values():
    q = wallis_q_table()
    assert len(q) == WALLIS_TABLE_ORDER + 1
    assert q[2] == bp / 6 and q[3] == -ap * bp / 6


def test_derived_c_agrees_with_printed_through_c2():
    derived = wallis_c_table(T, 3)
    printed = [P(c) for c in WALLIS_C_PRINTED]
    assert derived[:3] == printed[:3]


def test_printed_c3_differs_from_derived():
    derived = wallis_c_table(T, 3)
    printed = P(WALLIS_C_PRINTED[3])
    assert derived[3] != printed
    # binomial oracle: the x^-3 coefficient of (1 + y)^gp with y = Q_1/x + Q_2/x^2 + Q_3/x^3
    q = wallis_q_table()
    oracle = gp * q[3] + gp * (gp - 1) * q[1] * q[2] + gp * (gp - 1) * (gp - 2) / 6 * q[1] ** 3
    assert derived[3] == oracle


def wallis_power_reference(x, s, t):
    with mpmath.workprec(200):
        return (mpmath.gamma(x + t) / mpmath.gamma(x + s)) ** (1 / (t - s))


@pytest.mark.parametrize("s, t", [(Fraction(0), Fraction(1, 2)), (Fraction(-1, 3), Fraction(5, 4))])
def test_wallis_power_series_against_gamma(s, t):
    """The bound table tracks the Gamma ratio with error O(x^-6)."""
    entry = parse_entry(f"wallis_power:s={s},t={t}")
    S = get_series(entry, WALLIS_TABLE_ORDER)
    errors = []
    for x in (40, 80):
        v = eval_truncated(S, x)
        with mpmath.workprec(200):
            errors.append(abs(mpmath.mpf(v.numerator) / v.denominator - wallis_power_reference(x, mpmath.mpf(s.numerator) / s.denominator, mpmath.mpf(t.numerator) / t.denominator)))
    # error ratio ~ 2^6 between x = 40 and x = 80
    assert errors[0] < mpmath.mpf(10) ** -8
    assert 2 ** 5 < errors[0] / errors[1] < 2 ** 7


def test_printed_alpha_prime_sign_fails_numerically():
    """Binding ap = (s'+t'+1)/2 instead of (s'+t'-1)/2 misses the Gamma ratio at order 1/x^0."""
    s, t = Fraction(0), Fraction(1, 2)
    q = wallis_q_table()
    g = t - s
    wrong = {"ap": (s + t + 1) / 2, "bp": (1 - g * g) / 4, "gp": g}
    S = AsymptoticSeries([T.const(c.substitute(wrong)) for c in q], 1)
    x = 80
    v = eval_truncated(S, x)
    with mpmath.workprec(200):
        err = abs(mpmath.mpf(v.numerator) / v.denominator - wallis_power_reference(x, 0, mpmath.mpf(1) / 2))
    assert err > mpmath.mpf("0.5")


def test_wallis_ratio_series_against_gamma():
    entry = parse_entry("wallis_ratio:s=1/4,t=3/2")
    S = get_series(entry, WALLIS_TABLE_ORDER)
    assert S.exponent == Fraction(5, 4)
    x = 60
    v = eval_truncated(S, x)
    lo, hi = (mpmath.mpf(q.numerator) / q.denominator for q in intervals.bounds(v))
    with mpmath.workprec(200):
        ref = mpmath.gamma(mpmath.mpf(x) + mpmath.mpf(3) / 2) / mpmath.gamma(mpmath.mpf(x) + mpmath.mpf(1) / 4)
        assert abs((lo + hi) / 2 - ref) / ref < mpmath.mpf(x) ** -6


def test_wallis_power_integrated_coefficients():
    f = get_series(parse_entry("wallis_power"), 4)
    c = c_coeffs(f, SPEC, 4)
    c = [SPEC.to_display(x) for x in c]
    assert c[:4] == [T.one, alpha + ap, bp / 6, -(alpha + ap) * bp / 6]
    assert c[4] == (-6 + 60 * (alpha + ap) ** 2 + 20 * beta ** 2 - 13 * bp) * bp / 360


def test_wallis_power_mean():
    a = mean_of(parse_entry("wallis_power"), SPEC, 7).coeffs
    A = alpha + ap
    assert a[:4] == [T.one, alpha, T.zero, T.zero]
    assert a[4] == beta ** 2 * bp / 18
    assert a[5] == -A * beta ** 2 * bp / 6
    assert a[6] == (-9 + 90 * A ** 2 + 9 * beta ** 2 - 17 * bp) * beta ** 2 * bp / 270
    assert a[7] == -A * (-9 + 30 * A ** 2 + 9 * beta ** 2 - 17 * bp) * beta ** 2 * bp / 54


def test_wallis_ratio_mean():
    a = mean_of(parse_entry("wallis_ratio"), SPEC, 5).coeffs
    A = alpha + ap
    assert a[:2] == [T.one, alpha]
    assert a[2] == beta ** 2 * (gp - 1) / 6
    assert a[3] == -beta ** 2 * A * (gp - 1) / 6
    assert a[4] == -beta ** 2 * (60 * A ** 2 + 13 * beta ** 2 - 40 * bp
                                 - 2 * (30 * A ** 2 + 9 * beta ** 2 - 10 * bp) * gp
                                 + 3 * beta ** 2 * gp ** 2 + 2 * beta ** 2 * gp ** 3) / 360
    assert a[5] == -beta ** 2 * A * (-20 * A ** 2 - 13 * beta ** 2 + 40 * bp
                                     + 2 * (10 * A ** 2 + 9 * beta ** 2 - 10 * bp) * gp
                                     - 3 * beta ** 2 * gp ** 2 - 2 * beta ** 2 * gp ** 3) / 120


def test_wallis_table_bound():
    with pytest.raises(TableBoundError):
        get_series(parse_entry("wallis_power"), WALLIS_TABLE_ORDER + 1)
    with pytest.raises(TableBoundError):
        mean_of(parse_entry("wallis_power"), SPEC, WALLIS_TABLE_ORDER + 2)
    assert mean_of(parse_entry("wallis_power:s=0,t=1"), SPEC, WALLIS_TABLE_ORDER + 1).order == 7


def test_numeric_wallis_mean_matches_symbolic_substitution():
    sym = mean_of(parse_entry("wallis_ratio"), MeanSpec.numeric(-1, 2), 5)
    num = mean_of(parse_entry("wallis_ratio:s=1/2,t=3"), MeanSpec.numeric(-1, 2), 5)
    g = Fraction(5, 2)
    bind = {"ap": (Fraction(1, 2) + 3 - 1) / 2, "bp": (1 - g ** 2) / 4, "gp": g}
    assert [T.const(c.substitute(bind)) for c in sym.series.coeffs] == list(num.series.coeffs)


def test_entry_rejects_unknown_kind():
    with pytest.raises(ValueError):
        CatalogEntry("bessel")
