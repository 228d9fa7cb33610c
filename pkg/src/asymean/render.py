"""Text, LaTeX and JSON output for series and mean expansions."""

from __future__ import annotations

from fractions import Fraction

from .coeffield import Coefficient, Polynomial
from .intmean import MeanExpansion
from .series import AsymptoticSeries, series_to_json

__all__ = ["series_text", "series_latex", "coefficient_latex", "mean_text", "mean_latex", "mean_json"]

_LATEX_NAMES = {
    "alpha": r"\alpha",
    "beta": r"\beta",
    "ap": r"\alpha'",
    "bp": r"\beta'",
    "gp": r"\gamma'",
}


def _power(u, n: int):
    """Exponent u - n as a Fraction or a Coefficient."""
    return u - n


def _power_text(p) -> str:
    if isinstance(p, Coefficient) and not p.is_constant():
        return f"x^({p})"
    p = p.constant_value() if isinstance(p, Coefficient) else Fraction(p)
    if p == 0:
        return ""
    if p == 1:
        return "x"
    if p.denominator == 1:
        return f"x^{p.numerator}"
    return f"x^({p})"


def _signed_parts(c: Coefficient):
    """(negative, body) for a coefficient printed as one summand."""
    text = str(c)
    single = c.den.is_one() and len(c.num.terms) == 1
    if single and text.startswith("-"):
        return True, text[1:]
    if single:
        return False, text
    return False, f"({text})"


def series_text(S: AsymptoticSeries) -> str:
    """b*log(x) + sum a_n x^(u-n), zero terms omitted; "0" for the zero series."""
    parts = []
    if S.has_log():
        neg, body = _signed_parts(S.log_coeff)
        parts.append((neg, "log(x)" if body == "1" else f"{body}*log(x)"))
    for n, c in enumerate(S.coeffs):
        if c.is_zero():
            continue
        xp = _power_text(_power(S.exponent, n))
        neg, body = _signed_parts(c)
        if not xp:
            term = body
        elif body == "1":
            term = xp
        else:
            term = f"{body}*{xp}"
        parts.append((neg, term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, term in parts[1:]:
        out += (" - " if neg else " + ") + term
    return out


# ---------------------------------------------------------------------------
# LaTeX.


def _frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _monomial_latex(p: Polynomial, m) -> str:
    out = []
    for name, e in zip(p.table.names, m):
        if not e:
            continue
        sym = _LATEX_NAMES.get(name, name)
        if e == 1:
            out.append(sym)
        elif sym.endswith("'"):
            out.append(f"{sym[:-1]}'^{{{e}}}")
        else:
            out.append(f"{sym}^{{{e}}}")
    return "".join(out)


def _polynomial_latex(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for k, (m, c) in enumerate(p.sorted_terms()):
        mono = _monomial_latex(p, m)
        mag = abs(c)
        if not mono:
            body = _frac_latex(mag)
        elif mag == 1:
            body = mono
        else:
            body = _frac_latex(mag) + mono
        if k == 0:
            out += ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def coefficient_latex(c: Coefficient) -> str:
    num = _polynomial_latex(c.num)
    if c.den.is_one():
        return num
    return rf"\frac{{{num}}}{{{_polynomial_latex(c.den)}}}"


def _power_latex(p) -> str:
    if isinstance(p, Coefficient) and not p.is_constant():
        return f"x^{{{coefficient_latex(p)}}}"
    p = p.constant_value() if isinstance(p, Coefficient) else Fraction(p)
    if p == 0:
        return ""
    if p == 1:
        return "x"
    return f"x^{{{p}}}"


def series_latex(S: AsymptoticSeries) -> str:
    """LaTeX for the series with powers of x descending."""
    parts = []
    if S.has_log():
        parts.append((S.log_coeff, r"\log x"))
    for n, c in enumerate(S.coeffs):
        if not c.is_zero():
            parts.append((c, _power_latex(_power(S.exponent, n))))
    if not parts:
        return "0"
    out = ""
    for k, (c, xp) in enumerate(parts):
        single = c.den.is_one() and len(c.num.terms) == 1
        if single:
            neg = next(iter(c.num.terms.values())) < 0
            body = coefficient_latex(-c if neg else c)
        else:
            neg = False
            body = rf"\left({coefficient_latex(c)}\right)"
        if xp and body == "1":
            term = xp
        elif xp:
            term = f"{body}\\,{xp}" if body[-1].isdigit() else body + xp
        else:
            term = body
        if k == 0:
            out += ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out


# ---------------------------------------------------------------------------
# Means.


def mean_text(mean: MeanExpansion) -> str:
    return series_text(mean.display_series())


def mean_latex(mean: MeanExpansion) -> str:
    return f"I_f(x+s,x+t) \\sim {series_latex(mean.display_series())}"


def mean_json(mean: MeanExpansion) -> str:
    """Series JSON of the mean (display variables) with a "meta" block."""
    spec = mean.spec
    meta = {
        "function": mean.source,
        "s": str(spec.s),
        "t": str(spec.t),
        "display": spec.display,
        "order": mean.order,
    }
    return series_to_json(mean.display_series(), {"meta": meta})
