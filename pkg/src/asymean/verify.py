"""Numeric checks of mean expansions.

The mean value (1/(t-s)) int_{x+s}^{x+t} f is computed by the best
available oracle:

* exact antiderivative (powers with integer exponent other than -1,
  finite Laurent sums without an x^-1 term) - a Fraction;
* antiderivative with interval evaluation (log, x^-1 terms, fractional
  powers, digamma via log Gamma, polygamma via the next-lower polygamma);
* adaptive Simpson on interval function values (Wallis entries).

:func:`error_report` compares f(I_N), the function at the truncated
mean I_N = x + a_1 + a_2/x + ... + a_{N+1}/x^N, with that oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import intervals
from .catalog import CatalogEntry, mean_of
from .coeffield import as_fraction
from .errors import ExponentError, MonotonicityError, PrecisionError
from .intmean import MeanSpec
from .series import eval_truncated

__all__ = [
    "OracleValue",
    "ErrorRow",
    "ErrorReport",
    "evaluate_function",
    "mean_value_oracle",
    "oracle_kind",
    "inverse_mean_oracle",
    "adaptive_simpson",
    "composite_simpson",
    "error_report",
    "sturm_root_count",
]

DEFAULT_SIMPSON_TOL = Fraction(1, 2 ** 64)


@dataclass(frozen=True)
class OracleValue:
    value: object            # Fraction or interval
    kind: str                # "exact", "antiderivative" or "adaptive-simpson"


def _numeric_entry(entry: CatalogEntry) -> None:
    if entry.is_symbolic():
        raise ExponentError(f"{entry} has symbolic parameters; give numeric values to evaluate it")
    if entry.kind == "file":
        raise ExponentError("series files carry no closed form to evaluate numerically")


# ---------------------------------------------------------------------------
# Pointwise evaluation.


def _laurent_terms(entry: CatalogEntry):
    """(coefficient, exponent) pairs of a ratpoly entry."""
    u = entry.param("u")
    return [(c, u - n) for n, c in enumerate(entry.param("coeffs")) if c]


def evaluate_function(entry: CatalogEntry, y, prec: int = intervals.DEFAULT_PRECISION):
    """f(y) for rational y > 0: a Fraction when exact, otherwise an interval."""
    _numeric_entry(entry)
    ctx = intervals.context(prec)
    kind = entry.kind
    if intervals.is_interval(y):
        return _evaluate_interval(entry, y, ctx)
    y = as_fraction(y)
    if kind == "power":
        r = entry.param("r")
        if r.denominator == 1:
            return y ** r.numerator
        return intervals.power_interval(ctx, y, r)
    if kind == "ratpoly":
        return sum((c * y ** e for c, e in _laurent_terms(entry)), Fraction(0))
    if kind == "log":
        return intervals.log_interval(ctx, y)
    if kind == "digamma":
        return intervals.digamma_interval(ctx, y)
    if kind == "polygamma":
        return intervals.polygamma_interval(ctx, entry.param("m"), y)
    if kind in ("wallis_power", "wallis_ratio"):
        s, t = entry.param("s"), entry.param("t")
        if y + s <= 0 or y + t <= 0:
            raise ValueError("Wallis functions need x + s > 0 and x + t > 0")
        d = intervals.loggamma_interval(ctx, y + t) - intervals.loggamma_interval(ctx, y + s)
        if kind == "wallis_power":
            d = d / intervals.from_fraction(ctx, t - s)
        return ctx.exp(d)
    raise ExponentError(f"cannot evaluate {entry}")


def _evaluate_interval(entry: CatalogEntry, y, ctx):
    """f over an interval argument, for the closed-form entries only."""
    kind = entry.kind
    if kind == "power":
        r = entry.param("r")
        if r.denominator == 1:
            return y ** r.numerator
        return ctx.exp(ctx.log(y) * intervals.from_fraction(ctx, r))
    if kind == "ratpoly":
        return sum((intervals.from_fraction(ctx, c) * y ** e for c, e in _laurent_terms(entry)), ctx.mpf(0))
    if kind == "log":
        return ctx.log(y)
    raise ExponentError(f"{entry} is evaluated at rational points only")


# ---------------------------------------------------------------------------
# Mean value oracles.


def _antiderivative_term(ctx, c: Fraction, e, a: Fraction, b: Fraction):
    """int_a^b c y^e dy, exact when possible."""
    e = Fraction(e)
    if e == -1:
        return intervals.from_fraction(ctx, c) * (intervals.log_interval(ctx, b) - intervals.log_interval(ctx, a))
    if e.denominator == 1:
        k = e.numerator + 1
        return c * (b ** k - a ** k) / k
    k = e + 1
    return (intervals.from_fraction(ctx, c / k)
            * (intervals.power_interval(ctx, b, k) - intervals.power_interval(ctx, a, k)))


def oracle_kind(entry: CatalogEntry) -> str:
    """Which oracle :func:`mean_value_oracle` uses for ``entry``."""
    if entry.kind in ("wallis_power", "wallis_ratio"):
        return "adaptive-simpson"
    if entry.kind == "power":
        r = entry.param("r")
        if isinstance(r, Fraction) and r.denominator == 1 and r != -1:
            return "exact"
        return "antiderivative"
    if entry.kind == "ratpoly":
        if all(e != -1 for _, e in _laurent_terms(entry)):
            return "exact"
        return "antiderivative"
    return "antiderivative"


def mean_value_oracle(entry: CatalogEntry, x, s, t, prec: int = intervals.DEFAULT_PRECISION,
                      tol: Fraction = DEFAULT_SIMPSON_TOL) -> OracleValue:
    """(1/(t-s)) int_{x+s}^{x+t} f(y) dy."""
    _numeric_entry(entry)
    x, s, t = as_fraction(x), as_fraction(s), as_fraction(t)
    if not s < t:
        raise ValueError("need s < t")
    a, b = x + s, x + t
    kind = oracle_kind(entry)
    polynomial = entry.kind == "power" and entry.param("r").denominator == 1 and entry.param("r") > 0
    if a <= 0 and not polynomial:
        raise ValueError(f"the interval [{a}, {b}] reaches a singularity or leaves the domain at 0")
    ctx = intervals.context(prec)
    width = b - a
    if entry.kind == "power":
        value = _antiderivative_term(ctx, Fraction(1), entry.param("r"), a, b)
    elif entry.kind == "ratpoly":
        parts = [_antiderivative_term(ctx, c, e, a, b) for c, e in _laurent_terms(entry)]
        if any(intervals.is_interval(p) for p in parts):
            parts = [intervals.lift(ctx, p) for p in parts]
        value = sum(parts[1:], parts[0])
    elif entry.kind == "log":
        value = (intervals.from_fraction(ctx, b) * intervals.log_interval(ctx, b)
                 - intervals.from_fraction(ctx, a) * intervals.log_interval(ctx, a)
                 - intervals.from_fraction(ctx, width))
    elif entry.kind == "digamma":
        value = intervals.loggamma_interval(ctx, b) - intervals.loggamma_interval(ctx, a)
    elif entry.kind == "polygamma":
        m = entry.param("m")
        value = intervals.polygamma_interval(ctx, m - 1, b) - intervals.polygamma_interval(ctx, m - 1, a)
    else:
        value = adaptive_simpson(lambda y: evaluate_function(entry, y, prec), a, b, tol, prec)
    if intervals.is_interval(value):
        value = value / intervals.from_fraction(ctx, width)
    else:
        value = value / width
    return OracleValue(value, kind)


# ---------------------------------------------------------------------------
# Quadrature.


def _midpoint(v) -> Fraction:
    lo, hi = intervals.bounds(v)
    return (lo + hi) / 2


def _radius(v) -> Fraction:
    lo, hi = intervals.bounds(v)
    return (hi - lo) / 2


def adaptive_simpson(f: Callable, a, b, tol: Fraction = DEFAULT_SIMPSON_TOL,
                     prec: int = intervals.DEFAULT_PRECISION, max_depth: int = 60):
    """int_a^b f by adaptive Simpson on rational nodes, returned as an interval.

    ``f`` may return Fractions or intervals.  Panels are split until the
    Richardson estimate |S2 - S1|/15 falls below the panel's share of
    ``tol`` times the integral's magnitude; the returned interval is the
    estimate widened by the summed panel estimates and the enclosure
    widths of the function values.  The Richardson estimate is a
    heuristic, not a proven bound, for functions that are not smooth on
    the panel scale.
    """
    a, b = as_fraction(a), as_fraction(b)
    ctx = intervals.context(prec)
    cache = {}

    def F(y):
        if y not in cache:
            v = f(y)
            cache[y] = (_midpoint(v), _radius(v))
        return cache[y]

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6 * (flo + 4 * fmid + fhi)

    fa, fm, fb = F(a)[0], F((a + b) / 2)[0], F(b)[0]
    whole = simpson(a, b, fa, fm, fb)
    scale = abs(whole) if whole else Fraction(1)
    target = tol * scale

    total = Fraction(0)
    err = Fraction(0)
    stack = [(a, b, fa, fm, fb, whole, target, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, S, eps, depth = stack.pop()
        mid = (lo + hi) / 2
        lm, rm = (lo + mid) / 2, (mid + hi) / 2
        flm, frm = F(lm)[0], F(rm)[0]
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        delta = left + right - S
        if abs(delta) <= 15 * eps:
            total += left + right + delta / 15
            err += abs(delta) / 15
            continue
        if depth >= max_depth:
            raise PrecisionError(f"adaptive Simpson did not reach tolerance {float(tol):.3g} "
                                 f"within depth {max_depth}")
        stack.append((mid, hi, fmid, frm, fhi, right, eps / 2, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, eps / 2, depth + 1))
    # function-value enclosure widths propagate through the positive weights
    err += (b - a) * max((r for _, r in cache.values()), default=Fraction(0))
    return intervals.hull(ctx, total - err, total + err)


def composite_simpson(f: Callable, a, b, nodes: int):
    """Fixed-node composite Simpson with ``nodes`` points (odd, >= 3).

    Exact for Fraction-valued ``f``; interval-valued ``f`` yields an interval.
    """
    if nodes < 3 or nodes % 2 == 0:
        raise ValueError("composite Simpson needs an odd number of nodes >= 3")
    a, b = as_fraction(a), as_fraction(b)
    n = nodes - 1
    h = (b - a) / n
    acc = 0
    for i in range(nodes):
        w = 1 if i in (0, n) else (4 if i % 2 else 2)
        acc = acc + w * f(a + i * h)
    return acc * (h / 3)


# ---------------------------------------------------------------------------
# Monotonicity and inversion.


def _poly_rem(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    """Remainder of p by q; coefficient lists with the highest degree first."""
    p = list(p)
    while len(p) >= len(q) and p:
        if p[0] == 0:
            p.pop(0)
            continue
        f = p[0] / q[0]
        for i in range(len(q)):
            p[i] -= f * q[i]
        p.pop(0)
    while p and p[0] == 0:
        p.pop(0)
    return p


def _poly_eval(p: List[Fraction], y: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * y + c
    return acc


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_root_count(p: Sequence, a, b) -> int:
    """Number of distinct real roots of p in (a, b]; p highest degree first."""
    p = [as_fraction(c) for c in p]
    while p and p[0] == 0:
        p.pop(0)
    if len(p) <= 1:
        return 0
    deg = len(p) - 1
    dp = [c * (deg - i) for i, c in enumerate(p[:-1])]
    seq = [p, dp]
    while True:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    a, b = as_fraction(a), as_fraction(b)
    return _sign_changes(_poly_eval(q, a) for q in seq) - _sign_changes(_poly_eval(q, b) for q in seq)


def _direction(entry: CatalogEntry, a: Fraction, b: Fraction) -> int:
    """+1 if f increases on [a, b], -1 if it decreases; raises otherwise."""
    kind = entry.kind
    if kind == "power":
        return 1 if entry.param("r") > 0 else -1
    if kind in ("log", "digamma"):
        return 1
    if kind == "polygamma":
        # psi^(m) alternates in sign and is monotone: its derivative is psi^(m+1)
        return 1 if entry.param("m") % 2 == 0 else -1
    if kind in ("wallis_power", "wallis_ratio"):
        # d/dy log W = psi(y+t) - psi(y+s), of the sign of t - s
        return 1 if entry.param("t") > entry.param("s") else -1
    if kind == "ratpoly":
        terms = _laurent_terms(entry)
        # f'(y) y^(1-emin) is a polynomial in y with the sign of f' for y > 0
        emin = min(e for _, e in terms)
        deg = max(e for _, e in terms) - emin
        poly = [Fraction(0)] * (deg + 1)
        for c, e in terms:
            poly[deg - (e - emin)] += c * e
        if a <= 0:
            raise MonotonicityError("ratpoly monotonicity is checked for positive arguments only")
        if sturm_root_count(poly, a, b) or _poly_eval(poly, a) == 0:
            raise MonotonicityError(f"{entry} is not monotone on [{a}, {b}]")
        return 1 if _poly_eval(poly, b) > 0 else -1
    raise MonotonicityError(f"no monotonicity certificate for {entry}")


def inverse_mean_oracle(entry: CatalogEntry, x, s, t, prec: int = intervals.DEFAULT_PRECISION,
                        width: Optional[Fraction] = None, mean=None):
    """Interval containing I_f(x+s, x+t) = f^-1(mean value), by bisection.

    The lower end is the last point where f is certainly on one side of
    the mean value, the upper end the first point certainly on the other.
    Bisection points are dyadic rationals; the result width is at most
    ``width`` (default 2^-(prec/2) times the interval length) unless the
    enclosures of f and of the mean value stop separating first.
    """
    x, s, t = as_fraction(x), as_fraction(s), as_fraction(t)
    a, b = x + s, x + t
    sign = _direction(entry, a, b)
    if mean is None:
        mean = mean_value_oracle(entry, x, s, t, prec).value
    m_lo, m_hi = intervals.bounds(mean)
    if width is None:
        width = (b - a) / 2 ** (prec // 2)

    def below(y) -> Optional[bool]:
        """True if f(y) is certainly before the mean value, False if after, None if unresolved."""
        lo, hi = intervals.bounds(evaluate_function(entry, y, prec))
        if sign < 0:
            lo, hi = -hi, -lo
            mlo, mhi = -m_hi, -m_lo
        else:
            mlo, mhi = m_lo, m_hi
        if hi < mlo:
            return True
        if lo > mhi:
            return False
        return None

    def search(lo: Fraction, hi: Fraction, want_below: bool) -> Fraction:
        while hi - lo > width:
            mid = (lo + hi) / 2
            r = below(mid)
            if r is None:
                # unresolved: the answer is on the side we are not tightening
                if want_below:
                    hi = mid
                else:
                    lo = mid
                continue
            if r:
                lo = mid
            else:
                hi = mid
        return lo if want_below else hi

    if below(a) is False or below(b) is True:
        raise MonotonicityError("the mean value is not bracketed by f(x+s), f(x+t)")
    lower = search(a, b, True)
    upper = search(lower, b, False)
    ctx = intervals.context(prec)
    return intervals.hull(ctx, lower, upper)


# ---------------------------------------------------------------------------
# Error reports.


@dataclass(frozen=True)
class ErrorRow:
    order: int               # I_N keeps the powers x^1 .. x^-N
    truncated_mean: Fraction
    f_value: object
    oracle: object
    rel_error: object
    oracle_kind: str
    simpson: Optional[dict] = None


@dataclass
class ErrorReport:
    entry: str
    x: Fraction
    s: Fraction
    t: Fraction
    prec: int
    rows: List[ErrorRow] = field(default_factory=list)

    def to_text(self, digits: int = 12) -> str:
        head = [f"f = {self.entry}, x = {self.x}, s = {self.s}, t = {self.t}, precision = {self.prec} bits"]
        cols = ("N", "I_N", "f(I_N)", "mean value", "relative error", "oracle")
        table = [cols]
        for r in self.rows:
            table.append((
                str(r.order),
                intervals._decimal(Fraction(r.truncated_mean), digits, 0),
                intervals.format_interval(r.f_value, digits),
                intervals.format_interval(r.oracle, digits),
                intervals.format_interval(r.rel_error, 4),
                r.oracle_kind,
            ))
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        for row in table:
            head.append("  ".join(row[i].ljust(widths[i]) for i in range(len(cols))).rstrip())
        for r in self.rows:
            if r.simpson:
                parts = ", ".join(f"{n} nodes: {intervals.format_interval(v, 4)}" for n, v in r.simpson.items())
                head.append(f"composite Simpson relative error: {parts}")
                break
        return "\n".join(head) + "\n"

    def to_json(self, digits: int = 20) -> str:
        rows = []
        for r in self.rows:
            row = {
                "order": r.order,
                "truncated_mean": str(r.truncated_mean),
                "f_value": intervals.format_interval(r.f_value, digits),
                "oracle": intervals.format_interval(r.oracle, digits),
                "relative_error": intervals.format_interval(r.rel_error, digits),
                "oracle_kind": r.oracle_kind,
            }
            if r.simpson:
                row["simpson_relative_error"] = {
                    str(n): intervals.format_interval(v, digits) for n, v in r.simpson.items()
                }
            rows.append(row)
        return json.dumps(rows, indent=2) + "\n"


def _relative_error(ctx, value, reference):
    diff = intervals.lift(ctx, value) - intervals.lift(ctx, reference)
    return intervals.abs_interval(ctx, diff) / intervals.abs_interval(ctx, intervals.lift(ctx, reference))


def error_report(entry: CatalogEntry, x, s, t, orders: Sequence[int],
                 prec: int = intervals.DEFAULT_PRECISION,
                 simpson_nodes: Sequence[int] = ()) -> ErrorReport:
    """Relative error |f(I_N) - I| / |I| of each truncation I_N.

    I_N = x (1 + a_1/x + ... + a_{N+1}/x^(N+1)), i.e. the mean expansion
    down to the x^-N term.  ``simpson_nodes`` adds the relative error of
    fixed-node composite Simpson rules for comparison.
    """
    _numeric_entry(entry)
    x, s, t = as_fraction(x), as_fraction(s), as_fraction(t)
    orders = sorted(set(int(n) for n in orders))
    if not orders or orders[0] < 0:
        raise ValueError("orders must be non-negative integers")
    spec = MeanSpec.numeric(s, t)
    mean = mean_of(entry, spec, orders[-1] + 1)
    oracle = mean_value_oracle(entry, x, s, t, prec)
    ctx = intervals.context(prec)
    report = ErrorReport(str(entry), x, s, t, prec)
    simpson = {}
    if simpson_nodes:
        f = lambda y: evaluate_function(entry, y, prec)
        for n in simpson_nodes:
            v = composite_simpson(f, x + s, x + t, n)
            v = v / (t - s) if not intervals.is_interval(v) else v / intervals.from_fraction(ctx, t - s)
            simpson[n] = _relative_error(ctx, v, oracle.value)
    for N in orders:
        I_N = eval_truncated(mean.series.truncate(N + 1), x)
        fv = evaluate_function(entry, I_N, prec)
        rel = _relative_error(ctx, fv, oracle.value)
        report.rows.append(ErrorRow(N, I_N, fv, oracle.value, rel, oracle.kind, simpson or None))
    return report
