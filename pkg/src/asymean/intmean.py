"""Asymptotic expansion of integral means I_f(x+s, x+t).

For f(x) ~ x^u sum b_n x^-n the mean value C(x) = (1/(t-s)) int f(x+z) dz
has the expansion x^u sum c_n x^-n and the mean itself is
I_f ~ x sum a_n x^-n with a_0 = 1.  The a_n follow from solving
f(I_f(x)) = C(x) term by term.  Functions with a logarithmic part,
f ~ b log x + x^-1 sum b_n x^-n (digamma, log), take a separate path
that tracks log(sum a_n x^-n) instead of a power.

Coefficients are computed in the endpoint symbols s and t and shown in
alpha = (t+s)/2, beta = (t-s)/2 on output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .coeffield import (
    DEFAULT_TABLE,
    Coefficient,
    SymbolTable,
    falling_binomial,
    power_sum,
)
from .errors import ExponentError, SymbolTableError, TruncationError
from .series import AsymptoticSeries, PowTable, exponent_is_numeric, log_coeffs

__all__ = [
    "MeanSpec",
    "MeanExpansion",
    "c_coeffs",
    "d_coeffs",
    "c_prime_coeffs",
    "c_bar_coeffs",
    "mean_expand_standard",
    "mean_expand_log",
    "mean_expand",
    "iterate_mean",
    "log_identity_residual",
]


@dataclass(frozen=True)
class MeanSpec:
    """Endpoints of the mean I_f(x+s, x+t) and how results are displayed."""

    s: Coefficient
    t: Coefficient
    display: str = "alphabeta"

    def __post_init__(self):
        if self.display not in ("alphabeta", "st"):
            raise ValueError(f"display must be 'alphabeta' or 'st', not {self.display!r}")
        if self.s.table != self.t.table:
            raise SymbolTableError("s and t live in different symbol tables")
        if self.s.is_constant() and self.t.is_constant() and self.s == self.t:
            raise ValueError("numeric endpoints must differ")

    @classmethod
    def symbolic(cls, table: SymbolTable = DEFAULT_TABLE, display: str = "alphabeta") -> "MeanSpec":
        return cls(table.symbol("s"), table.symbol("t"), display)

    @classmethod
    def numeric(cls, s, t, table: SymbolTable = DEFAULT_TABLE, display: str = "alphabeta") -> "MeanSpec":
        return cls(table.coef(s), table.coef(t), display)

    @property
    def table(self) -> SymbolTable:
        return self.s.table

    @property
    def alpha(self) -> Coefficient:
        return (self.s + self.t) / 2

    @property
    def beta(self) -> Coefficient:
        return (self.t - self.s) / 2

    def is_numeric(self) -> bool:
        return self.s.is_constant() and self.t.is_constant()

    def variables(self) -> set:
        return self.s.variables() | self.t.variables()

    def to_display(self, c: Coefficient) -> Coefficient:
        """Rewrite s, t as alpha - beta, alpha + beta when displaying in alpha/beta."""
        if self.display != "alphabeta" or self.is_numeric():
            return c
        table = self.table
        if "alpha" not in table or "beta" not in table:
            return c
        if not (c.variables() & {"s", "t"}):
            return c
        a, b = table.symbol("alpha"), table.symbol("beta")
        return c.subs({"s": a - b, "t": a + b})


@dataclass(frozen=True)
class MeanExpansion:
    """I_f(x+s, x+t) ~ x sum a_n x^-n together with its provenance."""

    series: AsymptoticSeries
    spec: MeanSpec
    source: str = "series"
    scale: Coefficient | None = None     # b_0 divided out during normalization
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def coeffs(self) -> List[Coefficient]:
        """a_0 .. a_N in the display variables."""
        return [self.spec.to_display(c) for c in self.series.coeffs]

    def coeff(self, n: int) -> Coefficient:
        return self.spec.to_display(self.series.coeffs[n])

    def display_series(self) -> AsymptoticSeries:
        return AsymptoticSeries(self.coeffs, self.series.exponent, table=self.series.table)


# ---------------------------------------------------------------------------
# Coefficients of the integrated series C(x).


def _exponent_as_value(u, table: SymbolTable):
    return u if isinstance(u, Coefficient) else table.const(u)


def _check_exponent_symbols(u, spec: MeanSpec) -> None:
    if isinstance(u, Coefficient):
        clash = u.variables() & spec.variables()
        if clash:
            raise SymbolTableError(
                f"exponent symbol(s) {', '.join(sorted(clash))} also appear in the endpoints"
            )


def _c_coefficient(b: Sequence[Coefficient], u, spec: MeanSpec, n: int, h: List, top: bool = True):
    """c_n = sum_k b_k/(n+1-k) binom(u-k, n-k) h_{n-k}(s, t); ``top=False`` drops k = n."""
    acc = spec.table.zero
    for k in range(n + 1 if top else n):
        if b[k]:
            m = n - k
            acc = acc + b[k] * falling_binomial(u - k, m) * h[m] / (m + 1)
    return acc


def _power_sums(spec: MeanSpec, n: int) -> List:
    return [power_sum(k, spec.s, spec.t) for k in range(n + 1)]


def c_coeffs(f: AsymptoticSeries, spec: MeanSpec, N: int) -> List[Coefficient]:
    """c_0 .. c_N of the mean value C(x) = x^u sum c_n x^-n of f = x^u sum b_n x^-n.

    Requires b_0 = 1.  One formula serves every exponent, including the
    integer u >= -1 for which f has an x^-1 term.
    """
    if f.has_log():
        raise ExponentError("c_coeffs handles the power part only; f has a log part")
    f = f.to_table(spec.table)
    if f.coeffs[0] != 1:
        raise ExponentError(f"c_coeffs needs b_0 = 1, got {f.coeffs[0]}; normalize first")
    _check_exponent_symbols(f.exponent, spec)
    f.require_order(N, "f")
    b = f.coeff_list(N)
    u = _exponent_as_value(f.exponent, spec.table)
    h = _power_sums(spec, N)
    return [_c_coefficient(b, u, spec, n, h) for n in range(N + 1)]


def d_coeffs(spec: MeanSpec, N: int) -> List[Coefficient]:
    """d_0 .. d_N of (1/(t-s)) int dz/(x+z) = x^-1 sum d_n x^-n."""
    h = _power_sums(spec, N)
    return [spec.table.zero + Fraction((-1) ** n, n + 1) * h[n] for n in range(N + 1)]


def _integer_u(f: AsymptoticSeries) -> int:
    u = f.exponent
    if not exponent_is_numeric(u) or u.denominator != 1 or u < -1:
        raise ExponentError(f"the split form needs an integer exponent u >= -1, got {u}")
    return u.numerator


def c_prime_coeffs(f: AsymptoticSeries, spec: MeanSpec, N: int) -> List[Coefficient]:
    """c'_n = sum_{k=u+2}^{n} b_k/(n+1-k) binom(u-k, n-k) h_{n-k}: the part of C
    coming from powers below x^-1 (zero for n < u+2)."""
    u = _integer_u(f)
    f = f.to_table(spec.table)
    f.require_order(N, "f")
    b = f.coeff_list(N)
    h = _power_sums(spec, N)
    uc = spec.table.const(u)
    out = []
    for n in range(N + 1):
        acc = spec.table.zero
        for k in range(u + 2, n + 1):
            if b[k]:
                m = n - k
                acc = acc + b[k] * falling_binomial(uc - k, m) * h[m] / (m + 1)
        out.append(acc)
    return out


def c_bar_coeffs(f: AsymptoticSeries, spec: MeanSpec, N: int) -> List[Coefficient]:
    """C's coefficients assembled piecewise: the ordinary part up to x^0, the
    b_{u+1} log term, then c'_n + b_{u+1} d_{n-u-1}.  Equal to :func:`c_coeffs`."""
    u = _integer_u(f)
    f = f.to_table(spec.table)
    f.require_order(N, "f")
    b = f.coeff_list(N)
    c = c_coeffs(f, spec, N)
    cp = c_prime_coeffs(f, spec, N)
    d = d_coeffs(spec, N)
    out = []
    for n in range(N + 1):
        if n <= u:
            out.append(c[n])
        elif n == u + 1:
            out.append(b[u + 1])
        else:
            out.append(cp[n] + b[u + 1] * d[n - u - 1])
    return out


# ---------------------------------------------------------------------------


def _normalize(f: AsymptoticSeries):
    b0 = f.coeffs[0]
    if b0.is_zero():
        raise ExponentError("f has a zero leading coefficient")
    if b0 == 1:
        return f, f.table.one
    return f.map(lambda c: c / b0), b0


def mean_expand_standard(f: AsymptoticSeries, spec: MeanSpec, N: int,
                         source: str = "series") -> MeanExpansion:
    """Expansion of I_f(x+s, x+t) for f ~ x^u sum b_n x^-n, u != 0, to order N.

    Only b_0 .. b_{N-1} are needed: b_n enters a_n through both f(I_f)
    and C(x) with the same weight and cancels.  f is rescaled to b_0 = 1
    first (the mean of lambda*f is the mean of f).
    """
    if f.has_log():
        raise ExponentError("f has a log part; use mean_expand_log")
    f = f.to_table(spec.table)
    u = f.exponent
    if u == 0:
        raise ExponentError("exponent u = 0: the recursion divides by u; subtract the constant term "
                            "or use the log path")
    _check_exponent_symbols(u, spec)
    if N < 0:
        raise ValueError("order must be >= 0")
    f, scale = _normalize(f)
    need = max(N - 1, 0)
    f.require_order(need, "f")
    b = f.coeff_list(need)
    table = spec.table
    uc = _exponent_as_value(u, table)
    inv_u = 1 / uc
    h = _power_sums(spec, N)

    a: List[Coefficient] = [table.one]
    tables = {j: PowTable(a, uc - j, p0=table.one) for j in range(need + 1) if j == 0 or b[j]}
    for n in range(1, N + 1):
        acc = table.zero
        for j in range(1, n):
            if b[j]:
                acc = acc + b[j] * tables[j][n - j]
        inner = table.zero
        for k in range(1, n):
            if a[k]:
                inner = inner + (k * (1 + uc) - n) * a[k] * tables[0][n - k]
        acc = acc + inner / n - _c_coefficient(b + [table.zero], uc, spec, n, h, top=False)
        a.append(-acc * inv_u)
    series = AsymptoticSeries(a, 1, table=table)
    return MeanExpansion(series, spec, source, scale)


def _log_tail(f: AsymptoticSeries, N: int) -> List[Coefficient]:
    """b_0 .. b_N of the tail written as x^-1 sum b_n x^-n."""
    u = f.exponent
    if not exponent_is_numeric(u) or u.denominator != 1 or u > -1:
        if f.is_zero() or all(c.is_zero() for c in f.coeffs):
            return [f.table.zero] * (N + 1)
        raise ExponentError(f"log path needs a tail x^u sum b_n x^-n with integer u <= -1, got u = {u}")
    shift = -1 - u.numerator
    if all(c.is_zero() for c in f.coeffs):
        if not f.exact and f.order + shift < N:
            raise TruncationError(f"tail has order {f.order + shift}, order {N} required")
        return [f.table.zero] * (N + 1)
    if not f.exact and f.order + shift < N:
        raise TruncationError(f"tail has order {f.order + shift}, order {N} required")
    out = [f.table.zero] * shift
    for k in range(N + 1 - shift):
        out.append(f.coeff(k))
    return out[: N + 1]


def mean_expand_log(f: AsymptoticSeries, spec: MeanSpec, N: int,
                    source: str = "series") -> MeanExpansion:
    """Expansion of I_f(x+s, x+t) for f ~ b log x + x^-1 sum b_n x^-n, b != 0.

    Uses b_0 .. b_{N-1} of the tail.
    """
    if not f.has_log():
        raise ExponentError("f has no log part; use mean_expand_standard")
    f = f.to_table(spec.table)
    table = spec.table
    bl = f.log_coeff
    need = max(N - 1, 0)
    b = _log_tail(f, need)
    uc = table.const(-1)
    h = _power_sums(spec, N)
    d = [table.zero + Fraction((-1) ** n, n + 1) * h[n] for n in range(N + 1)]
    c = [_c_coefficient(b, uc, spec, n, h) for n in range(need + 1)]
    inv_b = 1 / bl

    a: List[Coefficient] = [table.one]
    L: List[Coefficient] = [table.zero]
    tables = {k: PowTable(a, -k - 1, p0=table.one) for k in range(need + 1) if b[k]}
    for n in range(1, N + 1):
        acc = -d[n] / n + c[n - 1] * inv_b
        lsum = table.zero
        for k in range(1, n):
            if L[k] and a[n - k]:
                lsum = lsum + k * L[k] * a[n - k]
        acc = acc + lsum / n
        tail = table.zero
        for k in range(n):
            if b[k]:
                tail = tail + b[k] * tables[k][n - 1 - k]
        a.append(acc - tail * inv_b)
        L.append(a[n] - lsum / n)
    series = AsymptoticSeries(a, 1, table=table)
    return MeanExpansion(series, spec, source, table.one)


def mean_expand(f: AsymptoticSeries, spec: MeanSpec, N: int, source: str = "series") -> MeanExpansion:
    """Route to the log path when f has a log part, else the standard path."""
    if f.has_log():
        return mean_expand_log(f, spec, N, source)
    return mean_expand_standard(f, spec, N, source)


def iterate_mean(f: AsymptoticSeries, spec: MeanSpec, N: int, times: int) -> List[MeanExpansion]:
    """Means of means: I_f, then the mean of x -> I_f(x+s, x+t), and so on."""
    out = []
    g = f
    for i in range(times):
        m = mean_expand(g, spec, N, source=f"iterate[{i + 1}]")
        out.append(m)
        g = m.series
    return out


def log_identity_residual(f: AsymptoticSeries, mean: MeanExpansion, N: int) -> List[Coefficient]:
    """Coefficients of x^-1 .. x^-N in f(I_f) - C on the log path (all zero when consistent).

    Both sides share b log x, which cancels; what remains is
    b log(sum a_n x^-n) + sum_k b_k (I_f)^(-k-1)  versus  -b sum d_n/n x^-n + x^-1 sum c_n x^-n.
    """
    spec = mean.spec
    table = spec.table
    f = f.to_table(table)
    b = _log_tail(f, N)
    a = mean.series.coeff_list(N)
    L = log_coeffs(a, N)
    h = _power_sums(spec, N)
    d = [table.zero + Fraction((-1) ** n, n + 1) * h[n] for n in range(N + 1)]
    c = [_c_coefficient(b, table.const(-1), spec, n, h) for n in range(N)]
    out = []
    for n in range(1, N + 1):
        lhs = f.log_coeff * L[n]
        for k in range(n):
            if b[k]:
                lhs = lhs + b[k] * PowTable(list(a), -k - 1, p0=table.one)[n - 1 - k]
        rhs = -f.log_coeff * d[n] / n + c[n - 1]
        out.append(lhs - rhs)
    return out
