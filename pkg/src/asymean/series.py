"""Truncated generalized asymptotic series.

An :class:`AsymptoticSeries` stands for

    b * log(x) + x^u * (a_0 + a_1 x^-1 + ... + a_N x^-N) + o(x^(u-N))

with exact coefficients.  ``exact=True`` declares the representation
finite (every coefficient past ``a_N`` is zero), which is the only case
in which the series may be extended with zeros.

Besides ring arithmetic the module implements the two functional
transforms used throughout: real powers ``A^rho`` and ``log A``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .coeffield import DEFAULT_TABLE, Coefficient, SymbolTable, as_fraction
from .errors import ExponentError, ParseError, TruncationError
from . import intervals

Exponent = Union[Fraction, Coefficient]

__all__ = [
    "AsymptoticSeries",
    "PowTable",
    "pow_coeffs",
    "log_coeffs",
    "pow_series",
    "log_series",
    "series_add",
    "series_mul",
    "series_scale",
    "series_arith",
    "eval_truncated",
    "rational_power",
    "series_to_json",
    "series_from_json",
]


def _exponent(value, table: SymbolTable) -> Exponent:
    if isinstance(value, Coefficient):
        value = value.to_table(table)
        return value.constant_value() if value.is_constant() else value
    if isinstance(value, str):
        c = table.coef(value)
        return c.constant_value() if c.is_constant() else c
    return as_fraction(value)


def exponent_is_numeric(u: Exponent) -> bool:
    return isinstance(u, Fraction)


def _integer_difference(u: Exponent, v: Exponent) -> Optional[int]:
    """u - v as an int when it is a known integer, else None."""
    d = u - v
    if isinstance(d, Coefficient):
        if not d.is_integer():
            return None
        d = d.constant_value()
    if d.denominator != 1:
        return None
    return d.numerator


def exponent_str(u: Exponent) -> str:
    return str(u)


class AsymptoticSeries:
    """Immutable truncated series ``b log x + x^u sum a_n x^-n``.

    Parameters may be given as numbers or coefficient literals; they are
    coerced into ``table`` (inferred from the first Coefficient found, else
    the default table).
    """

    __slots__ = ("coeffs", "exponent", "log_coeff", "exact", "table")

    def __init__(self, coeffs: Sequence, exponent=0, log_coeff=0, *, exact: bool = False,
                 table: SymbolTable | None = None):
        if table is None:
            for c in list(coeffs) + [exponent, log_coeff]:
                if isinstance(c, Coefficient):
                    table = c.table
                    break
            else:
                table = DEFAULT_TABLE
        coeffs = tuple(table.coef(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the coefficient a_0")
        if coeffs[0].is_zero() and any(not c.is_zero() for c in coeffs):
            raise ValueError("leading coefficient a_0 must be nonzero; use AsymptoticSeries.normalized")
        self.coeffs = coeffs
        self.exponent = _exponent(exponent, table)
        self.log_coeff = table.coef(log_coeff)
        self.exact = bool(exact)
        self.table = table

    @classmethod
    def normalized(cls, coeffs: Sequence, exponent=0, log_coeff=0, *, exact=False,
                   table: SymbolTable | None = None) -> "AsymptoticSeries":
        """Build a series after dropping leading zero coefficients.

        Each dropped zero lowers the exponent by one and the order by one.
        An all-zero list is kept as the zero series.
        """
        coeffs = list(coeffs)
        if table is None:
            table = next((c.table for c in coeffs if isinstance(c, Coefficient)), None)
            if table is None and isinstance(exponent, Coefficient):
                table = exponent.table
            if table is None:
                table = DEFAULT_TABLE
        coeffs = [table.coef(c) for c in coeffs]
        k = 0
        while k < len(coeffs) and coeffs[k].is_zero():
            k += 1
        if k == len(coeffs):
            return cls(coeffs, exponent, log_coeff, exact=exact, table=table)
        return cls(coeffs[k:], _exponent(exponent, table) - k, log_coeff, exact=exact, table=table)

    # -- inspection ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.log_coeff.is_zero() and all(c.is_zero() for c in self.coeffs)

    def has_log(self) -> bool:
        return not self.log_coeff.is_zero()

    def coeff(self, n: int) -> Coefficient:
        """a_n; beyond the order only for exact (finite) series."""
        if n < 0:
            raise IndexError(n)
        if n < len(self.coeffs):
            return self.coeffs[n]
        if self.exact:
            return self.table.zero
        raise TruncationError(f"coefficient a_{n} unknown: series has order {self.order}")

    def coeff_list(self, n: int) -> List[Coefficient]:
        """a_0 .. a_n (requires order >= n or an exact series)."""
        return [self.coeff(k) for k in range(n + 1)]

    def require_order(self, n: int, what: str = "series") -> None:
        if not self.exact and self.order < n:
            raise TruncationError(f"{what} has order {self.order}, order {n} required")

    def last_nonzero(self) -> int:
        """Index M of the last nonzero coefficient of an exact series."""
        if not self.exact:
            raise TruncationError("series is not declared finite")
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    def truncate(self, n: int) -> "AsymptoticSeries":
        """Keep a_0..a_n (pads with zeros only for exact series)."""
        coeffs = self.coeff_list(n)
        exact = self.exact and n >= self.order
        return AsymptoticSeries(coeffs, self.exponent, self.log_coeff, exact=exact, table=self.table)

    def to_table(self, table: SymbolTable) -> "AsymptoticSeries":
        if table == self.table:
            return self
        return AsymptoticSeries(
            [c.to_table(table) for c in self.coeffs],
            self.exponent.to_table(table) if isinstance(self.exponent, Coefficient) else self.exponent,
            self.log_coeff.to_table(table),
            exact=self.exact,
            table=table,
        )

    def map(self, fn) -> "AsymptoticSeries":
        """Apply ``fn`` to every coefficient (log part included)."""
        return AsymptoticSeries.normalized(
            [fn(c) for c in self.coeffs], self.exponent, fn(self.log_coeff),
            exact=self.exact, table=self.table,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymptoticSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.exponent == other.exponent
                and self.log_coeff == other.log_coeff and self.exact == other.exact)

    def __hash__(self) -> int:
        return hash((self.coeffs, self.exponent, self.log_coeff, self.exact))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        log = f"{self.log_coeff}*log(x) + " if self.has_log() else ""
        tag = " exact" if self.exact else ""
        return f"<AsymptoticSeries {log}x^({self.exponent}) [{body}]{tag}>"

    # -- operator sugar -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, AsymptoticSeries):
            return series_add(self, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, AsymptoticSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, Coefficient)):
            return series_scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return series_scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, AsymptoticSeries):
            return series_add(self, series_scale(other, -1))
        return NotImplemented


# ---------------------------------------------------------------------------
# Powers and logarithms on coefficient lists.


def rational_power(c: Coefficient, rho) -> Coefficient:
    """c^rho, exactly; non-integer rho needs c = 1 or a rational perfect power."""
    if isinstance(rho, Coefficient):
        if not rho.is_constant():
            if c == 1:
                return c
            raise ExponentError(f"symbolic power {rho} of {c} is not representable")
        rho = rho.constant_value()
    rho = Fraction(rho)
    if rho.denominator == 1:
        return c ** rho.numerator
    if c == 1:
        return c
    if not c.is_constant():
        raise ExponentError(f"power {rho} of {c} is not representable")
    q = c.constant_value()
    k = rho.denominator
    if q < 0:
        if k % 2 == 0:
            raise ExponentError(f"even root of negative number {q}")
        root = _exact_root(-q, k)
        root = None if root is None else -root
    else:
        root = _exact_root(q, k)
    if root is None:
        raise ExponentError(f"{q}^{rho} is irrational")
    return c.table.const(root) ** rho.numerator


def _iroot(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = 1 << (n.bit_length() // k + 1)          # above the root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    p = _iroot(q.numerator, k)
    d = _iroot(q.denominator, k)
    if p is None or d is None:
        return None
    return Fraction(p, d)


class PowTable:
    """Incrementally built coefficients P_n(rho) of (sum a_k x^-k)^rho.

    ``a`` is a list the owner may keep appending to; :meth:`extend`
    computes new P entries as soon as the matching a_n is present.
    ``p0`` overrides a_0^rho when the caller knows a representable value.
    """

    def __init__(self, a: List[Coefficient], rho, p0: Coefficient | None = None):
        self.a = a
        self.rho = rho
        self.P: List[Coefficient] = [p0 if p0 is not None else rational_power(a[0], rho)]

    def __getitem__(self, n: int) -> Coefficient:
        self.extend(n)
        return self.P[n]

    def extend(self, n: int) -> None:
        a, P, rho = self.a, self.P, self.rho
        if n >= len(a) and n >= len(P):
            raise TruncationError(f"P_{n} needs a_{n}; only {len(a) - 1} known")
        inv_a0 = None
        while len(P) <= n:
            m = len(P)
            if inv_a0 is None:
                inv_a0 = 1 / a[0]
            acc = 0
            for k in range(1, m + 1):
                if a[k]:
                    acc = acc + (k * (1 + rho) - m) * a[k] * P[m - k]
            P.append(a[0].table.zero + acc * inv_a0 / m)


def pow_coeffs(a: Sequence[Coefficient], rho, n: int) -> List[Coefficient]:
    """P_0(rho) .. P_n(rho) for the coefficient list ``a``."""
    if len(a) <= n:
        raise TruncationError(f"{n + 1} coefficients needed, {len(a)} given")
    table = PowTable(list(a[: n + 1]), rho)
    table.extend(n)
    return table.P[: n + 1]


def log_coeffs(a: Sequence[Coefficient], n: int) -> List[Coefficient]:
    """L_1 .. L_n of log(sum a_k x^-k), returned with L_0 = 0 in front."""
    if len(a) <= n:
        raise TruncationError(f"{n + 1} coefficients needed, {len(a)} given")
    a0 = a[0]
    zero = a0.table.zero
    inv_a0 = 1 / a0
    L = [zero]
    for m in range(1, n + 1):
        acc = zero
        for k in range(1, m):
            acc = acc + k * L[k] * a[m - k]
        L.append(a[m] * inv_a0 - acc * inv_a0 / m)
    return L


def _times_exponent(rho, u: Exponent, table: SymbolTable) -> Exponent:
    if isinstance(rho, Coefficient):
        rho = rho.constant_value() if rho.is_constant() else rho
    prod = rho * u
    return _exponent(prod, table)


def pow_series(A: AsymptoticSeries, rho, n: int) -> AsymptoticSeries:
    """x^(rho*u) * sum P_k(rho) x^-k for A = x^u sum a_k x^-k."""
    if A.has_log():
        raise ExponentError("cannot raise a series with a log part to a power")
    A.require_order(n, "base series")
    if isinstance(rho, (int, str)):
        rho = _exponent(rho, A.table)
    if isinstance(rho, Coefficient) and rho.is_constant():
        rho = rho.constant_value()
    if A.is_zero():
        raise ExponentError("power of the zero series")
    P = pow_coeffs(A.coeff_list(n), rho, n)
    return AsymptoticSeries(P, _times_exponent(rho, A.exponent, A.table), table=A.table)


def log_series(A: AsymptoticSeries, n: int) -> AsymptoticSeries:
    """log A for A = 1 + a_1 x^-1 + ... (exponent 0, a_0 = 1, no log part)."""
    if A.has_log():
        raise ExponentError("series already has a log part")
    if A.exponent != 0:
        raise ExponentError("log_series needs exponent 0 (log x terms are not representable here)")
    if A.coeffs[0] != 1:
        raise ExponentError("log_series needs a_0 = 1; log(a_0) is not a coefficient")
    A.require_order(n, "series")
    L = log_coeffs(A.coeff_list(n), n)
    return AsymptoticSeries.normalized(L, 0, table=A.table)


# ---------------------------------------------------------------------------
# Ring arithmetic.


def _merge_order(order: Optional[int], candidate: Optional[int]) -> Optional[int]:
    if order is None:
        return candidate
    if candidate is None:
        return order
    return min(order, candidate)


def series_add(A: AsymptoticSeries, B: AsymptoticSeries) -> AsymptoticSeries:
    if A.table != B.table:
        B = B.to_table(A.table)
    if A.is_zero() and A.exact:
        return B
    if B.is_zero() and B.exact:
        return A
    d = _integer_difference(A.exponent, B.exponent)
    if d is None:
        raise ExponentError(f"exponents {A.exponent} and {B.exponent} differ by a non-integer")
    if d < 0:
        A, B, d = B, A, -d
    # A has the higher exponent; B's a_k sits at offset d + k
    limit = None if A.exact else A.order
    limit = _merge_order(limit, None if B.exact else d + B.order)
    if limit is None:
        limit = max(A.order, d + B.order)
    out = []
    for n in range(limit + 1):
        c = A.coeff(n) if (n <= A.order or A.exact) else None
        k = n - d
        if k >= 0:
            c = c + B.coeff(k)
        out.append(c)
    exact = A.exact and B.exact
    return AsymptoticSeries.normalized(out, A.exponent, A.log_coeff + B.log_coeff,
                                       exact=exact, table=A.table)


def series_mul(A: AsymptoticSeries, B: AsymptoticSeries) -> AsymptoticSeries:
    if A.table != B.table:
        B = B.to_table(A.table)
    if A.has_log() or B.has_log():
        raise ExponentError("product of series with log parts is not representable")
    if A.exact and B.exact:
        limit = A.order + B.order
    else:
        limit = _merge_order(None if A.exact else A.order, None if B.exact else B.order)
    out = []
    for n in range(limit + 1):
        acc = A.table.zero
        for k in range(n + 1):
            if (k <= A.order or A.exact) and (n - k <= B.order or B.exact):
                ak = A.coeff(k)
                if ak:
                    acc = acc + ak * B.coeff(n - k)
        out.append(acc)
    expo = A.exponent + B.exponent
    return AsymptoticSeries.normalized(out, _exponent(expo, A.table), exact=A.exact and B.exact,
                                       table=A.table)


def series_scale(A: AsymptoticSeries, lam) -> AsymptoticSeries:
    lam = A.table.coef(lam)
    if lam.is_zero():
        return AsymptoticSeries([0] * len(A.coeffs), A.exponent, 0, exact=A.exact, table=A.table)
    return AsymptoticSeries([lam * c for c in A.coeffs], A.exponent, lam * A.log_coeff,
                            exact=A.exact, table=A.table)


def series_arith(A: AsymptoticSeries, B, op: str) -> AsymptoticSeries:
    """Dispatch on ``op`` in {"add", "mul", "scale"}; ``B`` is a number for scale."""
    if op == "add":
        return series_add(A, B)
    if op == "mul":
        return series_mul(A, B)
    if op == "scale":
        return series_scale(A, B)
    raise ValueError(f"unknown series operation {op!r}")


# ---------------------------------------------------------------------------


def eval_truncated(A: AsymptoticSeries, x, bindings=None, prec: int = intervals.DEFAULT_PRECISION):
    """Value of the truncation b log x + x^u sum a_n x^-n at rational x.

    Exact Fraction when the exponent is an integer and there is no log
    part; otherwise an interval enclosure at ``prec`` bits.
    """
    x = as_fraction(x)
    bindings = dict(bindings or {})
    if not exponent_is_numeric(A.exponent):
        u = A.exponent.substitute(bindings)
    else:
        u = A.exponent
    poly = Fraction(0)
    xinv = 1 / x if x else None
    if xinv is None and len(A.coeffs) > 1:
        raise ValueError("cannot evaluate negative powers at x = 0")
    pw = Fraction(1)
    for c in A.coeffs:
        if c:
            poly += c.substitute(bindings) * pw
        if xinv is not None:
            pw *= xinv
    log_b = A.log_coeff.substitute(bindings) if A.has_log() else Fraction(0)
    if u.denominator == 1 and not log_b:
        if x == 0 and u < 0:
            raise ValueError("negative power at x = 0")
        return poly * x ** u.numerator
    if x <= 0:
        raise ValueError("logarithm or fractional power needs x > 0")
    ctx = intervals.context(prec)
    val = intervals.power_interval(ctx, x, u) * intervals.from_fraction(ctx, poly)
    if log_b:
        val = val + intervals.from_fraction(ctx, log_b) * intervals.log_interval(ctx, x)
    return val


# ---------------------------------------------------------------------------
# JSON document: {"symbols", "log_coeff", "exponent", "coeffs", "exact"}


def series_to_dict(A: AsymptoticSeries) -> dict:
    return {
        "symbols": list(A.table.names),
        "log_coeff": str(A.log_coeff),
        "exponent": exponent_str(A.exponent),
        "coeffs": [str(c) for c in A.coeffs],
        "exact": A.exact,
    }


def series_to_json(A: AsymptoticSeries, extra: dict | None = None) -> str:
    doc = series_to_dict(A)
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def series_from_dict(doc: dict, table: SymbolTable | None = None) -> AsymptoticSeries:
    try:
        names = doc["symbols"]
        coeffs = doc["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"series document is missing {exc}") from None
    if table is None:
        table = SymbolTable(names) if tuple(names) != DEFAULT_TABLE.names else DEFAULT_TABLE
    if not isinstance(coeffs, list) or not coeffs:
        raise ParseError("series document needs a non-empty 'coeffs' list")
    return AsymptoticSeries(
        [table.coef(str(c)) for c in coeffs],
        str(doc.get("exponent", "0")),
        table.coef(str(doc.get("log_coeff", "0"))),
        exact=bool(doc.get("exact", False)),
        table=table,
    )


def series_from_json(text: str, table: SymbolTable | None = None) -> AsymptoticSeries:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid series JSON: {exc}") from None
    return series_from_dict(doc, table)
