"""Solving B(A(x)) = C(x) for the asymptotic series A.

With B = x^u sum b_n x^-n, C = x^v sum c_n x^-n and the unknown
A = x^w sum a_n x^-n, matching the powers of x in

    sum_j b_j x^(w(u-j)) (sum_k a_k x^-k)^(u-j) = C(x)

gives a triangular system for the a_n.  Two branches exist:

* ascending, w = v/u > 0, for any B satisfying the alignment condition;
* descending, w = v/(u - M) < 0, only for finite B with last nonzero
  coefficient b_M.

Equations with u = 0 reduce to the ascending case after removing the
common constant term (:func:`strip_constant`).  :func:`compose` expands
B(A(x)) directly and is the verification oracle for both solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .coeffield import Coefficient
from .errors import ConditionError, ExponentError, TruncationError
from .series import (
    AsymptoticSeries,
    PowTable,
    exponent_is_numeric,
    rational_power,
)

__all__ = [
    "SolveBranch",
    "classify",
    "solve",
    "solve_ascending",
    "solve_descending",
    "strip_constant",
    "solve_with_constant",
    "compose",
]


@dataclass(frozen=True)
class SolveBranch:
    branch: str            # "ascending" or "descending"
    w: Fraction
    a0: Coefficient
    M: int | None = None   # last nonzero index of B (descending only)


def _numeric_exponent(S: AsymptoticSeries, name: str) -> Fraction:
    if not exponent_is_numeric(S.exponent):
        raise ExponentError(f"{name} must have a numeric exponent, got {S.exponent}")
    return S.exponent


def _no_log(S: AsymptoticSeries, name: str) -> None:
    if S.has_log():
        raise ConditionError("log part", f"{name} has a log part present; use the integral-mean log path")


def _sign(c: Coefficient, name: str) -> int:
    if not c.is_constant():
        return 0
    v = c.constant_value()
    return (v > 0) - (v < 0)


def _leading_root(c0: Coefficient, b: Coefficient, rho: Fraction) -> Coefficient:
    """(c0/b)^rho, the real root that is positive when c0/b > 0."""
    try:
        return rational_power(c0 / b, rho)
    except ExponentError as exc:
        raise ConditionError("representability", f"a_0 = ({c0}/{b})^({rho}) is not representable: {exc}")


def _ascending_setup(B: AsymptoticSeries, C: AsymptoticSeries) -> SolveBranch:
    _no_log(B, "B")
    _no_log(C, "C")
    u = _numeric_exponent(B, "B")
    v = _numeric_exponent(C, "C")
    if u == 0:
        raise ConditionError("u = 0", "B has exponent 0; remove the common constant with strip_constant")
    if B.is_zero() or C.is_zero():
        raise ConditionError("nonzero", "B and C must be nonzero series")
    if v == 0 or (u > 0) != (v > 0):
        raise ConditionError(
            "ascending condition (1)",
            f"ascending condition (1) violated: exponents u={u} and v={v} must have the same sign",
        )
    w = v / u
    last = B.order if not B.exact else B.last_nonzero()
    for n in range(1, last + 1):
        if B.coeffs[n] and (n * w).denominator != 1:
            raise ConditionError(
                "ascending condition (2)",
                f"ascending condition (2) violated at n={n}: b_{n} != 0 but n*w = {n * w} is not an integer",
                n,
            )
    b0, c0 = B.coeffs[0], C.coeffs[0]
    sb, sc = _sign(b0, "b0"), _sign(c0, "c0")
    if sb and sc and sb != sc:
        raise ConditionError(
            "ascending condition (3)",
            f"ascending condition (3) violated: b_0 = {b0} and c_0 = {c0} have opposite signs",
        )
    a0 = _leading_root(c0, b0, 1 / u)
    return SolveBranch("ascending", w, a0)


def _descending_setup(B: AsymptoticSeries, C: AsymptoticSeries) -> SolveBranch:
    _no_log(B, "B")
    _no_log(C, "C")
    u = _numeric_exponent(B, "B")
    v = _numeric_exponent(C, "C")
    if not B.exact:
        raise ConditionError(
            "descending condition (1)",
            "descending condition (1) violated: B must be declared finite (exact)",
        )
    if C.is_zero():
        raise ConditionError("nonzero", "C must be a nonzero series")
    M = B.last_nonzero()
    if M < 0:
        raise ConditionError("nonzero", "B must be a nonzero series")
    if u - M == 0:
        raise ConditionError(
            "descending condition (2)",
            f"descending condition (2) violated: u - M = 0, so w = v/(u - M) is undefined",
        )
    w = v / (u - M)
    if w >= 0:
        raise ConditionError(
            "descending condition (2)",
            f"descending condition (2) violated: w = v/(u - M) = {w} is not negative",
        )
    for j in range(1, M + 1):
        if B.coeffs[M - j] and (w * j).denominator != 1:
            raise ConditionError(
                "descending alignment",
                f"descending alignment violated at j={j}: b_{M - j} != 0 but w*j = {w * j} is not an integer",
                j,
            )
    a0 = _leading_root(C.coeffs[0], B.coeffs[M], 1 / (u - M))
    return SolveBranch("descending", w, a0, M)


def classify(B: AsymptoticSeries, C: AsymptoticSeries, branch: str = "ascending") -> SolveBranch:
    """Check the solvability conditions of ``branch`` and return w, a_0 (and M)."""
    if branch in ("ascending", "asc"):
        return _ascending_setup(B, C)
    if branch in ("descending", "desc"):
        return _descending_setup(B, C)
    raise ValueError(f"unknown branch {branch!r}")


def solve_ascending(B: AsymptoticSeries, C: AsymptoticSeries, N: int) -> AsymptoticSeries:
    """The solution A with positive leading exponent w = v/u, to order N."""
    info = _ascending_setup(B, C)
    u, w = B.exponent, info.w
    C.require_order(N, "C")
    B.require_order(int(N / w), "B")
    b = B.coeff_list(int(N / w)) if not B.exact else None
    bj = (lambda j: B.coeff(j)) if B.exact else (lambda j: b[j])
    b0 = B.coeffs[0]
    a: List[Coefficient] = [info.a0]
    q = C.coeffs[0] / b0                       # = a_0^u
    P: Dict[int, PowTable] = {0: PowTable(a, u, p0=q)}
    factor = info.a0 / (b0 * u * q)

    for n in range(1, N + 1):
        acc = B.table.zero
        j = 1
        while w * j <= n:
            wj = w * j
            if wj.denominator == 1:
                coef = bj(j)
                if coef:
                    if j not in P:
                        P[j] = PowTable(a, u - j, p0=q * rational_power(info.a0, -j))
                    acc = acc + coef * P[j][n - wj.numerator]
            j += 1
        inner = B.table.zero
        for k in range(1, n):
            if a[k]:
                inner = inner + (k * (1 + u) - n) * a[k] * P[0][n - k]
        acc = acc + b0 * inner / (n * info.a0) - C.coeff(n)
        a.append(-factor * acc)
    return AsymptoticSeries(a, w, table=B.table)


def solve_descending(B: AsymptoticSeries, C: AsymptoticSeries, N: int) -> AsymptoticSeries:
    """The solution A with negative leading exponent w = v/(u - M), to order N."""
    info = _descending_setup(B, C)
    C.require_order(N, "C")
    u, w, M = B.exponent, info.w, info.M
    rho = u - M
    bM = B.coeffs[M]
    a: List[Coefficient] = [info.a0]
    q = C.coeffs[0] / bM                        # = a_0^(u - M)
    P: Dict[int, PowTable] = {0: PowTable(a, rho, p0=q)}
    factor = info.a0 / (rho * bM * q)
    step = -w                                   # positive offset per unit j

    for n in range(1, N + 1):
        inner = B.table.zero
        for k in range(1, n):
            if a[k]:
                inner = inner + (k * (1 + rho) - n) * a[k] * P[0][n - k]
        acc = C.coeff(n) - bM * inner / (n * info.a0)
        j = 1
        while j <= M and step * j <= n:
            coef = B.coeffs[M - j]
            if coef:
                if j not in P:
                    P[j] = PowTable(a, rho + j, p0=q * rational_power(info.a0, j))
                acc = acc - coef * P[j][n - int(step * j)]
            j += 1
        a.append(factor * acc)
    return AsymptoticSeries(a, w, table=B.table)


def solve(B: AsymptoticSeries, C: AsymptoticSeries, N: int, branch: str = "ascending") -> AsymptoticSeries:
    if branch in ("ascending", "asc"):
        return solve_ascending(B, C, N)
    if branch in ("descending", "desc"):
        return solve_descending(B, C, N)
    raise ValueError(f"unknown branch {branch!r}")


def strip_constant(B: AsymptoticSeries, C: AsymptoticSeries) -> Tuple[AsymptoticSeries, AsymptoticSeries]:
    """Remove the common constant term of exponent-0 series B and C.

    B(A) = C is equivalent to (B - d)(A) = C - d; the reduced series have
    the exponents of their first surviving terms.
    """
    if B.has_log() or C.has_log():
        raise ConditionError("log part", "log part present; use the integral-mean log path")
    if B.exponent != 0 or C.exponent != 0:
        raise ConditionError("exponent 0", f"strip_constant needs exponent 0, got u={B.exponent}, v={C.exponent}")
    if B.coeffs[0] != C.coeffs[0]:
        raise ConditionError(
            "constant mismatch",
            f"constant mismatch: b_0 = {B.coeffs[0]} differs from c_0 = {C.coeffs[0]}",
        )
    if all(c.is_zero() for c in B.coeffs[1:]):
        raise ConditionError("constant B", "B is constant; the equation does not determine A")
    if all(c.is_zero() for c in C.coeffs[1:]):
        raise ConditionError("constant C", "C is constant after removing b_0; no asymptotic solution")
    zero = B.table.zero
    B1 = AsymptoticSeries.normalized([zero] + list(B.coeffs[1:]), 0, exact=B.exact, table=B.table)
    C1 = AsymptoticSeries.normalized([zero] + list(C.coeffs[1:]), 0, exact=C.exact, table=C.table)
    return B1, C1


def solve_with_constant(B: AsymptoticSeries, C: AsymptoticSeries, N: int) -> AsymptoticSeries:
    B1, C1 = strip_constant(B, C)
    return solve_ascending(B1, C1, N)


def compose(B: AsymptoticSeries, A: AsymptoticSeries, N: int) -> AsymptoticSeries:
    """The series of B(A(x)) to order N.

    B's exponent may be symbolic when A has a_0 = 1; A's exponent must be
    numeric.  For w <= 0 the series B must be finite.
    """
    _no_log(B, "B")
    _no_log(A, "A")
    w = _numeric_exponent(A, "A")
    u = B.exponent
    A.require_order(N, "A")
    if w <= 0 and not B.exact:
        raise ExponentError("B(A(x)) is not an asymptotic series: A has exponent <= 0 and B is infinite")
    a = A.coeff_list(N)
    a0 = a[0]
    zero = B.table.zero
    tables: Dict[int, PowTable] = {}

    def P(j: int, k: int) -> Coefficient:
        if j not in tables:
            tables[j] = PowTable(a, u - j, p0=rational_power(a0, u - j))
        return tables[j][k]

    if w > 0:
        limit = int(N / w)
        B.require_order(limit, "B")
        for j in range(1, (B.last_nonzero() if B.exact else limit) + 1):
            if j <= limit and B.coeff(j) and (w * j).denominator != 1:
                raise ExponentError(f"b_{j} != 0 but w*j = {w * j} is not an integer")
        out = []
        for n in range(N + 1):
            acc = zero
            j = 0
            while w * j <= n:
                wj = w * j
                if wj.denominator == 1 and (j <= B.order or B.exact):
                    bj = B.coeff(j)
                    if bj:
                        acc = acc + bj * P(j, n - wj.numerator)
                j += 1
            out.append(acc)
        lead = w * u
    else:
        M = B.last_nonzero()
        step = -w
        for j in range(M + 1):
            if B.coeffs[j] and (step * (M - j)).denominator != 1:
                raise ExponentError(f"b_{j} != 0 but the offset {step * (M - j)} is not an integer")
        out = []
        for n in range(N + 1):
            acc = zero
            for j in range(M + 1):
                bj = B.coeffs[j]
                off = step * (M - j)
                if bj and off <= n:
                    acc = acc + bj * P(j, n - int(off))
            out.append(acc)
        lead = w * (u - M)
    if isinstance(lead, Coefficient) and lead.is_constant():
        lead = lead.constant_value()
    return AsymptoticSeries.normalized(out, lead, table=B.table)
