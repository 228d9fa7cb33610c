"""Built-in asymptotic expansions.

Each entry produces an :class:`AsymptoticSeries` to a requested order:

========================  ==============================================
``power:r=<rat|sym>``     x^r
``log``                   log x
``digamma``               psi(x) ~ log x + x^-1 sum (-1)^n B_{n+1}/(n+1) x^-n
``polygamma:m=<int>``     psi^(m)(x), m >= 1, scaled to leading coefficient 1
``ratpoly:[c0,..]@u=<k>`` x^k (c0 + c1 x^-1 + ...), a finite sum
``wallis_power:s=,t=``    (Gamma(x+t')/Gamma(x+s'))^(1/(t'-s'))
``wallis_ratio:s=,t=``    Gamma(x+t')/Gamma(x+s')
``file:<path>``           a series JSON document
========================  ==============================================

The Wallis entries use a fixed table of polynomials Q_0 .. Q_6 in the
auxiliary variables ap = (s'+t'-1)/2, bp = (1-(t'-s')^2)/4 and
gp = t'-s'; they are bounded to that table.  Omitting s and t keeps
ap, bp, gp symbolic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Optional, Tuple

from .coeffield import DEFAULT_TABLE, Coefficient, SymbolTable, as_fraction, bernoulli, parse_coefficient
from .errors import ExponentError, ParseError, TableBoundError
from .intmean import MeanExpansion, MeanSpec, mean_expand_log, mean_expand_standard
from .series import AsymptoticSeries, pow_coeffs, series_from_json

__all__ = [
    "CatalogEntry",
    "parse_entry",
    "get_series",
    "mean_of",
    "catalog_listing",
    "wallis_q_table",
    "wallis_c_table",
    "WALLIS_C_PRINTED",
    "WALLIS_TABLE_ORDER",
]

# Q_0 .. Q_6 of the Wallis power function, in ap, bp.
_WALLIS_Q = (
    "1",
    "ap",
    "1/6*bp",
    "-1/6*ap*bp",
    "1/6*ap^2*bp - 1/60*bp - 13/360*bp^2",
    "-1/6*ap^3*bp + 1/20*ap*bp + 13/120*ap*bp^2",
    "1/6*ap^4*bp - 1/10*ap^2*bp - 13/60*ap^2*bp^2 + 1/126*bp + 53/2520*bp^2 + 737/45360*bp^3",
)

# The Wallis ratio coefficients C_0 .. C_3 as commonly printed.  The
# library derives C_n from the Q table instead (C_n = P_n(gp) of the
# Q series); C_0 .. C_2 agree, C_3 does not.  Kept for comparison.
WALLIS_C_PRINTED = (
    "1",
    "ap*gp",
    "1/6*gp*(bp + 3*ap^2*(gp - 1))",
    "1/6*ap*gp*(bp + 3*ap^2*(gp - 1))*(gp - 2)",
)

WALLIS_TABLE_ORDER = len(_WALLIS_Q) - 1

_KINDS = ("power", "log", "digamma", "polygamma", "ratpoly", "wallis_power", "wallis_ratio", "file")


@dataclass(frozen=True)
class CatalogEntry:
    """A named function from the catalog.

    ``params`` holds the kind-specific parameters as a tuple of
    (name, value) pairs so entries stay hashable.
    """

    kind: str
    params: Tuple[Tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParseError(f"unknown catalog entry {self.kind!r}")

    def param(self, name: str, default=None):
        return dict(self.params).get(name, default)

    @property
    def series_max_order(self) -> Optional[int]:
        """Largest series order available, or None when unbounded."""
        if self.kind in ("wallis_power", "wallis_ratio"):
            return WALLIS_TABLE_ORDER
        return None

    @property
    def max_order(self) -> Optional[int]:
        """Largest mean order available: one more than the series bound,
        since the mean to order N uses the series to order N - 1."""
        bound = self.series_max_order
        return None if bound is None else bound + 1

    def is_log(self) -> bool:
        return self.kind in ("log", "digamma")

    def is_symbolic(self) -> bool:
        if self.kind == "power":
            return not isinstance(self.param("r"), Fraction)
        if self.kind in ("wallis_power", "wallis_ratio"):
            return self.param("s") is None
        return False

    def __str__(self) -> str:
        p = dict(self.params)
        if self.kind == "power":
            return f"power:r={p['r']}"
        if self.kind == "polygamma":
            return f"polygamma:m={p['m']}"
        if self.kind == "ratpoly":
            return f"ratpoly:[{','.join(str(c) for c in p['coeffs'])}]@u={p['u']}"
        if self.kind in ("wallis_power", "wallis_ratio"):
            if p.get("s") is None:
                return self.kind
            return f"{self.kind}:s={p['s']},t={p['t']}"
        if self.kind == "file":
            return f"file:{p['path']}"
        return self.kind


# ---------------------------------------------------------------------------
# Entry-spec parsing.


def _kv(text: str, spec: str) -> dict:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise ParseError(f"expected name=value in {spec!r}, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} must be a rational number, got {text!r}") from None


_RATPOLY_RE = re.compile(r"^\[(.*)\]@u=(.+)$")


def parse_entry(spec: str) -> CatalogEntry:
    """Parse an entry spec such as ``polygamma:m=2`` or ``ratpoly:[1,1]@u=-2``."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind == "file":
        if not rest:
            raise ParseError("file: needs a path")
        return CatalogEntry("file", (("path", rest),))
    if kind in ("log", "digamma"):
        if rest:
            raise ParseError(f"{kind} takes no parameters")
        return CatalogEntry(kind)
    if kind == "power":
        p = _kv(rest, spec)
        if set(p) != {"r"}:
            raise ParseError("power needs exactly r=<rational or symbol>")
        r_text = p["r"]
        try:
            r = Fraction(r_text)
        except (ValueError, ZeroDivisionError):
            if r_text not in DEFAULT_TABLE:
                raise ParseError(f"unknown exponent symbol {r_text!r}") from None
            r = r_text
        if r == 0:
            raise ExponentError("power:r=0 is constant; use log for the r -> 0 limit")
        return CatalogEntry("power", (("r", r),))
    if kind == "polygamma":
        p = _kv(rest, spec)
        if set(p) != {"m"}:
            raise ParseError("polygamma needs m=<int>")
        try:
            m = int(p["m"])
        except ValueError:
            raise ParseError(f"m must be an integer, got {p['m']!r}") from None
        if m < 1:
            raise ExponentError("polygamma needs m >= 1 (m = 0 is digamma)")
        return CatalogEntry("polygamma", (("m", m),))
    if kind == "ratpoly":
        match = _RATPOLY_RE.match(rest.replace(" ", ""))
        if not match:
            raise ParseError("ratpoly needs the form [c0,c1,...]@u=<int>")
        coeffs = tuple(_rational(c, "ratpoly coefficient") for c in match.group(1).split(",") if c)
        if not coeffs:
            raise ParseError("ratpoly needs at least one coefficient")
        if coeffs[0] == 0:
            raise ExponentError("ratpoly leading coefficient must be nonzero")
        try:
            u = int(match.group(2))
        except ValueError:
            raise ParseError(f"ratpoly exponent must be an integer, got {match.group(2)!r}") from None
        return CatalogEntry("ratpoly", (("coeffs", coeffs), ("u", u)))
    if kind in ("wallis_power", "wallis_ratio"):
        p = _kv(rest, spec)
        if not p:
            return CatalogEntry(kind, (("s", None), ("t", None)))
        if set(p) != {"s", "t"}:
            raise ParseError(f"{kind} needs s=<rational>,t=<rational>")
        s, t = _rational(p["s"], "s"), _rational(p["t"], "t")
        if s == t:
            raise ExponentError(f"{kind} needs s != t")
        return CatalogEntry(kind, (("s", s), ("t", t)))
    raise ParseError(f"unknown catalog entry {kind!r}; known: {', '.join(_KINDS)}")


# ---------------------------------------------------------------------------
# Series.


def _check_bound(entry: CatalogEntry, N: int) -> None:
    if N < 0:
        raise ValueError("order must be >= 0")
    bound = entry.series_max_order
    if bound is not None and N > bound:
        raise TableBoundError(
            f"{entry.kind} is table-bound: series order {N} requested, the coefficient table "
            f"ends at order {bound}; higher coefficients need the generating algorithm for "
            f"the Wallis expansions, which is not included"
        )


def wallis_q_table(table: SymbolTable = DEFAULT_TABLE) -> list:
    return [parse_coefficient(q, table) for q in _WALLIS_Q]


def wallis_c_table(table: SymbolTable = DEFAULT_TABLE, N: int = WALLIS_TABLE_ORDER) -> list:
    """C_0 .. C_N of Gamma(x+t')/Gamma(x+s') ~ x^gp sum C_n x^-n, from the Q table."""
    q = wallis_q_table(table)
    return pow_coeffs(q, table.symbol("gp"), N)


def _wallis_bindings(entry: CatalogEntry) -> dict:
    s, t = entry.param("s"), entry.param("t")
    g = t - s
    return {"ap": (s + t - 1) / 2, "bp": (1 - g * g) / 4, "gp": g}


def polygamma_scale(m: int) -> Fraction:
    """lambda = (-1)^(m-1) (m-1)!, the leading coefficient of psi^(m)."""
    return Fraction((-1) ** (m - 1) * factorial(m - 1))


def polygamma_coeffs(m: int, N: int) -> list:
    """b_0 .. b_N of psi^(m)(x) / lambda = x^-m sum b_n x^-n."""
    out = []
    for n in range(N + 1):
        if n == 0:
            out.append(Fraction(1))
        elif n == 1:
            out.append(Fraction(m, 2))
        elif n % 2:
            out.append(Fraction(0))
        else:
            out.append(bernoulli(n) * Fraction(factorial(n + m - 1), factorial(n) * factorial(m - 1)))
    return out


def get_series(entry: CatalogEntry, N: int, table: SymbolTable = DEFAULT_TABLE) -> AsymptoticSeries:
    """The entry's expansion to order N (finite entries are flagged exact)."""
    _check_bound(entry, N)
    kind = entry.kind
    if kind == "power":
        r = entry.param("r")
        exponent = r if isinstance(r, Fraction) else table.symbol(r)
        return AsymptoticSeries([1], exponent, exact=True, table=table)
    if kind == "log":
        return AsymptoticSeries([0], -1, log_coeff=1, exact=True, table=table)
    if kind == "digamma":
        b = [Fraction((-1) ** n) * bernoulli(n + 1) / (n + 1) for n in range(N + 1)]
        return AsymptoticSeries(b, -1, log_coeff=1, table=table)
    if kind == "polygamma":
        m = entry.param("m")
        return AsymptoticSeries(polygamma_coeffs(m, N), -m, table=table)
    if kind == "ratpoly":
        return AsymptoticSeries(list(entry.param("coeffs")), entry.param("u"), exact=True, table=table)
    if kind == "wallis_power":
        coeffs = wallis_q_table(table)[: N + 1]
        S = AsymptoticSeries(coeffs, 1, table=table)
        if not entry.is_symbolic():
            S = _bind(S, _wallis_bindings(entry))
        return S
    if kind == "wallis_ratio":
        coeffs = wallis_c_table(table, N)
        if entry.is_symbolic():
            return AsymptoticSeries(coeffs, table.symbol("gp"), table=table)
        b = _wallis_bindings(entry)
        return _bind(AsymptoticSeries(coeffs, b["gp"], table=table), b)
    if kind == "file":
        S = series_from_json(Path(entry.param("path")).read_text())
        if not S.exact:
            S.require_order(N, entry.param("path"))
        return S
    raise ParseError(f"unknown catalog entry {kind!r}")


def _bind(S: AsymptoticSeries, bindings: dict) -> AsymptoticSeries:
    table = S.table
    coeffs = [table.const(c.substitute(bindings)) for c in S.coeffs]
    return AsymptoticSeries(coeffs, S.exponent, S.log_coeff, exact=S.exact, table=table)


def entry_scale(entry: CatalogEntry) -> Fraction:
    """Factor the catalog series was divided by (1 unless polygamma)."""
    if entry.kind == "polygamma":
        return polygamma_scale(entry.param("m"))
    return Fraction(1)


def mean_of(entry: CatalogEntry, spec: MeanSpec, N: int) -> MeanExpansion:
    """Expansion of I_f(x+s, x+t) to order N for a catalog entry."""
    bound = entry.max_order
    if bound is not None and N > bound:
        raise TableBoundError(
            f"{entry.kind} is table-bound: mean order {N} requested, at most {bound} is available "
            f"from the coefficient table"
        )
    need = max(N - 1, 0)
    table = spec.table
    if entry.kind == "file":
        f = get_series(entry, 0, table)
        if not f.exact:
            f.require_order(need, entry.param("path"))
        f = f.to_table(table)
    else:
        f = get_series(entry, need, table)
    if f.has_log():
        m = mean_expand_log(f, spec, N, source=str(entry))
    else:
        m = mean_expand_standard(f, spec, N, source=str(entry))
    scale = table.const(entry_scale(entry)) * (m.scale if m.scale is not None else 1)
    return MeanExpansion(m.series, spec, str(entry), scale)


_LISTING = (
    ("power", "r", "x^r, r rational (not 0) or a symbol"),
    ("log", "-", "log x"),
    ("digamma", "-", "psi(x)"),
    ("polygamma", "m", "psi^(m)(x), m >= 1"),
    ("ratpoly", "coeffs, u", "x^u (c0 + c1/x + ...)"),
    ("wallis_power", "s, t", "(Gamma(x+t)/Gamma(x+s))^(1/(t-s))"),
    ("wallis_ratio", "s, t", "Gamma(x+t)/Gamma(x+s)"),
    ("file", "path", "series JSON document"),
)


def catalog_listing() -> str:
    """Aligned table of entry ids, parameters and the largest mean order."""
    rows = [("id", "params", "max_order", "function")]
    for kind, params, desc in _LISTING:
        bound = str(WALLIS_TABLE_ORDER + 1) if kind.startswith("wallis") else "unbounded"
        rows.append((kind, params, bound, desc))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = []
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(3)) + "  " + r[3])
    return "\n".join(line.rstrip() for line in lines) + "\n"
