"""Interval enclosures at configurable binary precision.

Thin layer over mpmath's interval context (outward-rounded arithmetic,
``exp``/``log``/``loggamma``) plus enclosures of digamma and polygamma,
which mpmath's interval context does not provide.  Those are evaluated
by upward recurrence followed by the asymptotic series with an explicit
remainder bound.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

from .coeffield import bernoulli

DEFAULT_PRECISION = 256


@lru_cache(maxsize=None)
def context(prec: int = DEFAULT_PRECISION) -> MPIntervalContext:
    """Interval context working at ``prec`` bits.  Contexts are never mutated."""
    if prec < 16:
        raise ValueError("precision must be at least 16 bits")
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def is_interval(value) -> bool:
    return hasattr(value, "_mpi_")


def from_fraction(ctx, q) -> object:
    q = Fraction(q)
    if q.denominator == 1:
        return ctx.mpf(q.numerator)
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def lift(ctx, value):
    """Fractions become (tight) intervals; intervals pass through."""
    if is_interval(value):
        return value
    return from_fraction(ctx, value)


def bounds(value) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an interval (or a degenerate pair for a Fraction)."""
    if not is_interval(value):
        q = Fraction(value)
        return q, q
    lo, hi = value._mpi_
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


def contains(value, q) -> bool:
    lo, hi = bounds(value)
    return lo <= Fraction(q) <= hi


def width(value) -> Fraction:
    lo, hi = bounds(value)
    return hi - lo


def hull(ctx, lo: Fraction, hi: Fraction):
    """Smallest representable interval containing ``[lo, hi]``."""
    return ctx.mpf([from_fraction(ctx, lo).a, from_fraction(ctx, hi).b])


def magnitude_upper(value) -> Fraction:
    lo, hi = bounds(value)
    return max(abs(lo), abs(hi))


def abs_interval(ctx, value):
    lo, hi = bounds(value)
    if lo >= 0:
        return value
    if hi <= 0:
        return -value
    return hull(ctx, Fraction(0), max(-lo, hi))


def format_interval(value, digits: int = 20) -> str:
    """``[lo, hi]`` with ``digits`` significant decimal digits, rounded outward."""
    lo, hi = bounds(value)
    if lo == hi and not is_interval(value):
        return f"[{_decimal(lo, digits, 0)}, {_decimal(hi, digits, 0)}]"
    return f"[{_decimal(lo, digits, -1)}, {_decimal(hi, digits, +1)}]"


def _decimal(q: Fraction, digits: int, direction: int) -> str:
    """Scientific decimal string of q; direction -1/+1 rounds down/up, 0 nearest."""
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    a = abs(q)
    if direction and q < 0:
        direction = -direction
    # exponent e with 10^e <= a < 10^(e+1)
    e = len(str(a.numerator)) - len(str(a.denominator))
    if Fraction(10) ** e > a:
        e -= 1
    elif Fraction(10) ** (e + 1) <= a:
        e += 1
    scaled = a / Fraction(10) ** (e - digits + 1)
    if direction > 0:
        m = -((-scaled.numerator) // scaled.denominator)
    elif direction < 0:
        m = scaled.numerator // scaled.denominator
    else:
        m = round(scaled)
    if m >= 10 ** digits:
        m //= 10
        e += 1
    s = str(m)
    return f"{sign}{s[0]}.{s[1:]}e{e:+d}"


# ---------------------------------------------------------------------------
# Special functions.


def _shift_target(prec: int) -> int:
    # past this point the Bernoulli tail reaches 2^-prec within ~prec/6 terms
    return max(32, prec)


def polygamma_interval(ctx, m: int, x) -> object:
    """Enclosure of psi^(m)(x) for rational x > 0 (m = 0 is digamma)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("polygamma enclosure needs x > 0")
    prec = ctx.prec
    shift = max(0, _shift_target(prec) - int(x))
    y = x + shift
    Y = from_fraction(ctx, y)
    # recurrence psi^(m)(x) = psi^(m)(x+K) - (-1)^m m! sum 1/(x+i)^(m+1)
    acc = ctx.mpf(0)
    for i in range(shift):
        acc += 1 / from_fraction(ctx, x + i) ** (m + 1)
    rec = (-1) ** m * factorial(m) * acc

    if m == 0:
        head = ctx.log(Y) - 1 / (2 * Y)
        sign = -1
    else:
        head = factorial(m - 1) / Y ** m + factorial(m) / (2 * Y ** (m + 1))
        sign = 1
    tol = abs(bounds(head)[0]) / 2 ** (prec + 8)
    tail = ctx.mpf(0)
    k = 1
    while True:
        if m == 0:
            term = from_fraction(ctx, bernoulli(2 * k)) / (2 * k * Y ** (2 * k))
        else:
            term = (from_fraction(ctx, bernoulli(2 * k) * Fraction(factorial(2 * k + m - 1), factorial(2 * k)))
                    / Y ** (2 * k + m))
        if magnitude_upper(term) < tol:
            break
        tail += term
        k += 1
        if k > 4 * prec:
            raise ArithmeticError("polygamma tail failed to converge")
    # the remainder is bounded by the first omitted term; doubled for safety
    err = 2 * magnitude_upper(term)
    value = head + sign * tail
    if m > 0 and (m - 1) % 2:
        value = -value
    value = value + hull(ctx, -err, err)
    return value - rec


def digamma_interval(ctx, x) -> object:
    return polygamma_interval(ctx, 0, x)


def loggamma_interval(ctx, x) -> object:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("loggamma enclosure needs x > 0")
    return ctx.loggamma(from_fraction(ctx, x))


def power_interval(ctx, x, e) -> object:
    """Enclosure of x^e for rational e (x > 0 unless e is an integer; integer e is rounded once)."""
    x, e = Fraction(x), Fraction(e)
    if e.denominator == 1:
        return from_fraction(ctx, x ** e.numerator)
    if x <= 0:
        raise ValueError("fractional power needs a positive base")
    return ctx.exp(ctx.log(from_fraction(ctx, x)) * from_fraction(ctx, e))


def log_interval(ctx, x) -> object:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log needs a positive argument")
    return ctx.log(from_fraction(ctx, x))
