"""Exact coefficient arithmetic.

Every series coefficient in asymean is a :class:`Coefficient`, a reduced
quotient of two sparse multivariate polynomials with rational
coefficients.  Symbols are interned in a :class:`SymbolTable`; values
from different tables never mix.

The module also hosts the two number-theoretic helpers the expansions
need: Bernoulli numbers and the divided power sums
``h_k(s, t) = (t^(k+1) - s^(k+1)) / (t - s)``.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import (
    CoefficientDivisionError,
    ParseError,
    SymbolTableError,
    UnboundSymbolError,
)

Rational = Fraction
Monomial = Tuple[int, ...]
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "SymbolTable",
    "DEFAULT_TABLE",
    "Polynomial",
    "Coefficient",
    "poly_gcd",
    "parse_coefficient",
    "bernoulli",
    "power_sum",
    "falling_binomial",
    "substitute",
    "as_fraction",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings like ``"-13/360"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    if isinstance(value, Coefficient):
        return value.constant_value()
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


class SymbolTable:
    """An ordered, immutable set of symbol names.

    The order fixes the exponent-vector layout and the graded
    lexicographic ordering used for printing.  Two tables are
    interchangeable iff their name tuples are equal.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not _NAME_RE.match(name):
                raise SymbolTableError(f"invalid symbol name {name!r}")
        if len(set(names)) != len(names):
            raise SymbolTableError(f"duplicate symbol in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolTable) and other.names == self.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"SymbolTable({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SymbolTableError(
                f"unknown symbol {name!r}; table has {', '.join(self.names)}"
            ) from None

    def symbol(self, name: str) -> "Coefficient":
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return Coefficient._from_poly(Polynomial(self, {tuple(exps): Fraction(1)}))

    def symbols(self, *names: str) -> Tuple["Coefficient", ...]:
        return tuple(self.symbol(n) for n in names)

    def const(self, value) -> "Coefficient":
        return Coefficient._from_poly(Polynomial.constant(self, as_fraction(value)))

    def coef(self, value) -> "Coefficient":
        """Build a Coefficient from a number, a literal string or a Coefficient."""
        if isinstance(value, Coefficient):
            return value.to_table(self)
        if isinstance(value, str):
            return parse_coefficient(value, self)
        return self.const(value)

    @property
    def zero(self) -> "Coefficient":
        return self.const(0)

    @property
    def one(self) -> "Coefficient":
        return self.const(1)


DEFAULT_TABLE = SymbolTable(("alpha", "beta", "s", "t", "r", "ap", "bp", "gp"))


def _grlex(m: Monomial):
    return (sum(m), m)


class Polynomial:
    """Sparse multivariate polynomial over Q.

    ``terms`` maps exponent vectors to nonzero Fractions.  Instances are
    treated as immutable; all operations return new objects.
    """

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: SymbolTable, terms: Mapping[Monomial, Fraction] | None = None):
        self.table = table
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            n = len(table)
            for m, c in terms.items():
                if len(m) != n:
                    raise SymbolTableError("exponent vector does not match symbol table")
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, table: SymbolTable, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, table: SymbolTable, c: Fraction) -> "Polynomial":
        if not c:
            return cls._raw(table, {})
        return cls._raw(table, {(0,) * len(table): Fraction(c)})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        m = max(self.terms, key=_grlex)
        return m, self.terms[m]

    def sorted_terms(self):
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.table is not self.table and other.table != self.table:
            raise SymbolTableError("polynomials belong to different symbol tables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.table, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Fraction) -> "Polynomial":
        if not c:
            return Polynomial._raw(self.table, {})
        if c == 1:
            return self
        return Polynomial._raw(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial._raw(self.table, {})
        if other.is_constant():
            return self.scale(other.constant_value())
        if self.is_constant():
            return other.scale(self.constant_value())
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.table, out)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.table, Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, m: Monomial) -> "Polynomial":
        """Multiply by the monomial with exponent vector ``m``."""
        return Polynomial._raw(
            self.table, {tuple(a + b for a, b in zip(k, m)): c for k, c in self.terms.items()}
        )

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises ValueError when ``other`` does not divide."""
        self._check(other)
        if other.is_zero():
            raise CoefficientDivisionError("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        if other.is_monomial():
            (om, oc), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                q = tuple(a - b for a, b in zip(m, om))
                if min(q) < 0:
                    raise ValueError("inexact polynomial division")
                out[q] = c / oc
            return Polynomial._raw(self.table, out)
        # general case: division by lex leading term
        lm = max(other.terms)
        lc = other.terms[lm]
        rem = dict(self.terms)
        quo: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem)
            q = tuple(a - b for a, b in zip(m, lm))
            if min(q) < 0:
                raise ValueError("inexact polynomial division")
            c = rem[m] / lc
            quo[q] = c
            for om, oc in other.terms.items():
                k = tuple(a + b for a, b in zip(om, q))
                v = rem.get(k, 0) - c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Polynomial._raw(self.table, quo)

    def monic(self) -> "Polynomial":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term()[1])

    # -- views in one variable ---------------------------------------------

    def coeffs_in(self, i: int) -> Dict[int, "Polynomial"]:
        """Split into ``{degree: coefficient}`` with respect to variable ``i``."""
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = m[i]
            stripped = m[:i] + (0,) + m[i + 1:]
            parts.setdefault(d, {})[stripped] = c
        return {d: Polynomial._raw(self.table, t) for d, t in parts.items()}

    def var_power(self, i: int, d: int) -> "Polynomial":
        m = [0] * len(self.table)
        m[i] = d
        return Polynomial._raw(self.table, {tuple(m): Fraction(1)})

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, values: Sequence) -> object:
        """Evaluate with ``values[i]`` substituted for variable ``i``.

        ``values`` may hold Fractions or Coefficients (anything closed
        under ``+`` and ``*`` with Fractions).  ``None`` leaves the variable
        in place, which requires Coefficient arithmetic.
        """
        cache: Dict[Tuple[int, int], object] = {}

        def power(i: int, e: int):
            key = (i, e)
            if key not in cache:
                cache[key] = values[i] ** e
            return cache[key]

        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    # -- comparison / printing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.table == other.table and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self.terms.items())))
        return self._hash

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.table.names, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = self.monomial_str(m)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# GCD: recursive primitive polynomial remainder sequences over Q.


def _content(p: Polynomial, i: int) -> Polynomial:
    """gcd of the coefficients of ``p`` seen as a polynomial in variable ``i``."""
    g = None
    for c in p.coeffs_in(i).values():
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return Polynomial.constant(p.table, Fraction(1))
    return g


def _prem(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    db = b.degree_in(i)
    lcb = b.coeffs_in(i)[db]
    r = a
    while not r.is_zero():
        d = r.degree_in(i)
        if d < db:
            break
        lcr = r.coeffs_in(i)[d]
        r = r * lcb - (lcr * b) * b.var_power(i, d - db)
    return r


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    table = a.table
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(table, Fraction(1))
    if a.is_monomial() or b.is_monomial():
        mono, other = (a, b) if a.is_monomial() else (b, a)
        low = list(next(iter(mono.terms)))
        for m in other.terms:
            low = [min(x, y) for x, y in zip(low, m)]
        return Polynomial._raw(table, {tuple(low): Fraction(1)})
    va, vb = a.variables(), b.variables()
    i = max(va | vb)
    if i not in va:
        return _gcd(_content(b, i), a)
    if i not in vb:
        return _gcd(_content(a, i), b)
    ca, cb = _content(a, i), _content(b, i)
    pa, pb = a.divexact(ca), b.divexact(cb)
    g_content = _gcd(ca, cb)
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, i)
        if r.is_zero():
            g_prim = pb.divexact(_content(pb, i))
            break
        if r.degree_in(i) == 0:
            g_prim = Polynomial.constant(table, Fraction(1))
            break
        pa, pb = pb, r.divexact(_content(r, i))
    return g_content * g_prim


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized to leading coefficient 1."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        return a
    return _gcd(a, b).monic()


# ---------------------------------------------------------------------------


class Coefficient:
    """Reduced rational function ``num / den`` over Q.

    Canonical form: ``gcd(num, den) = 1`` and ``den`` has graded-lex
    leading coefficient 1, so any purely numeric value has ``den == 1``.
    Equality is therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(num.table, Fraction(1))
        num._check(den)
        if den.is_zero():
            raise CoefficientDivisionError("zero denominator")
        n, d = _reduce(num, den)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _from_poly(cls, p: Polynomial) -> "Coefficient":
        c = cls.__new__(cls)
        c.num = p
        c.den = Polynomial.constant(p.table, Fraction(1))
        c._hash = None
        return c

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "Coefficient":
        c = cls.__new__(cls)
        c.num = num
        c.den = den
        c._hash = None
        return c

    @property
    def table(self) -> SymbolTable:
        return self.num.table

    # -- coercion ----------------------------------------------------------

    def _lift(self, other) -> "Coefficient":
        if isinstance(other, Coefficient):
            if other.table is not self.table and other.table != self.table:
                raise SymbolTableError("coefficients belong to different symbol tables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Coefficient._from_poly(Polynomial.constant(self.table, Fraction(other)))
        return NotImplemented

    def to_table(self, table: SymbolTable) -> "Coefficient":
        """Re-express in another table containing every symbol used here."""
        if table == self.table:
            return self
        idx = [None] * len(self.table)
        for i in self.num.variables() | self.den.variables():
            idx[i] = table.index(self.table.names[i])

        def move(p: Polynomial) -> Polynomial:
            out = {}
            for m, c in p.terms.items():
                v = [0] * len(table)
                for i, e in enumerate(m):
                    if e:
                        v[idx[i]] = e
                out[tuple(v)] = c
            return Polynomial._raw(table, out)

        return Coefficient._raw(move(self.num), move(self.den))

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"coefficient {self} is not a number")
        return self.num.constant_value()

    def is_integer(self) -> bool:
        return self.is_constant() and self.constant_value().denominator == 1

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def variables(self) -> set:
        """Names of the symbols occurring in this coefficient."""
        used = self.num.variables() | self.den.variables()
        return {self.table.names[i] for i in used}

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return Coefficient._from_poly(self.num + other.num)
        if self.den == other.den:
            return Coefficient(self.num + other.num, self.den)
        return Coefficient(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Coefficient":
        return Coefficient._raw(-self.num, self.den)

    def __pos__(self) -> "Coefficient":
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return Coefficient._from_poly(self.num * other.num)
        return Coefficient(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        if self.num.is_zero():
            raise CoefficientDivisionError("division by zero coefficient")
        lc = self.num.leading_term()[1]
        return Coefficient._raw(self.den.scale(1 / lc), self.num.scale(1 / lc))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise CoefficientDivisionError(f"division of {self} by zero")
        if other.is_constant():
            return Coefficient._raw(self.num.scale(1 / other.constant_value()), self.den)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int) -> "Coefficient":
        if isinstance(k, Fraction):
            if k.denominator != 1:
                raise ValueError("fractional power of a Coefficient")
            k = k.numerator
        if k < 0:
            return self.inverse() ** (-k)
        return Coefficient._raw(self.num ** k, self.den ** k)

    # -- substitution --------------------------------------------------------

    def substitute(self, bindings: Mapping[str, Number]) -> Fraction:
        """Exact value with every symbol bound to a rational."""
        values = self._binding_vector(bindings)
        missing = [self.table.names[i] for i in self.num.variables() | self.den.variables()
                   if values[i] is None]
        if missing:
            raise UnboundSymbolError(f"unbound symbol(s): {', '.join(sorted(missing))}")
        den = self.den.evaluate(values)
        if den == 0:
            raise CoefficientDivisionError(f"denominator {self.den} vanishes at {dict(bindings)}")
        return Fraction(self.num.evaluate(values)) / den

    def _binding_vector(self, bindings: Mapping[str, Number]):
        values = [None] * len(self.table)
        for name, v in bindings.items():
            values[self.table.index(name)] = as_fraction(v)
        return values

    def subs(self, mapping: Mapping[str, object]) -> "Coefficient":
        """Partial substitution; values may be numbers, literals or Coefficients."""
        vals = []
        for i, name in enumerate(self.table.names):
            if name in mapping:
                vals.append(self.table.coef(mapping[name]) if not isinstance(mapping[name], Coefficient)
                            else mapping[name].to_table(self.table))
            else:
                vals.append(self.table.symbol(name))
        for name in mapping:
            self.table.index(name)
        zero = self.table.zero
        num = zero + self.num.evaluate(vals)
        den = zero + self.den.evaluate(vals)
        return num / den

    # -- comparison / printing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Coefficient):
            return self.table == other.table and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        num = str(self.num)
        if self.den.is_one():
            return num
        den = str(self.den)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1 or any(
            c != 1 for c in self.den.terms.values()
        ):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Coefficient({self})"


def _reduce(num: Polynomial, den: Polynomial) -> Tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return num, Polynomial.constant(num.table, Fraction(1))
    if den.is_constant():
        return num.scale(1 / den.constant_value()), Polynomial.constant(num.table, Fraction(1))
    g = _gcd(num, den)
    if not g.is_constant():
        num = num.divexact(g)
        den = den.divexact(g)
    lc = den.leading_term()[1]
    if den.is_constant():
        return num.scale(1 / lc), Polynomial.constant(num.table, Fraction(1))
    return num.scale(1 / lc), den.scale(1 / lc)


# ---------------------------------------------------------------------------
# Literal parser.  Grammar:
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := ('+'|'-') unary | power
#   power  := atom ('^' integer-exponent)?
#   atom   := integer | symbol | '(' expr ')'

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("sym", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, table: SymbolTable):
        self.text = text
        self.table = table
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Coefficient:
        if not self.tokens:
            raise ParseError("empty coefficient literal")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self) -> Coefficient:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Coefficient:
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> Coefficient:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Coefficient:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind == "op" and val == "(":
                # allow ^(-2)
                inner_sign = 1
                if self.peek() == ("op", "-"):
                    self.take()
                    inner_sign = -1
                kind, val = self.take()
                if kind != "num":
                    raise ParseError(f"exponent must be an integer in {self.text!r}")
                self.expect(")")
                val *= inner_sign
            elif kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * val)
        return base

    def atom(self) -> Coefficient:
        kind, val = self.take()
        if kind == "num":
            return self.table.const(val)
        if kind == "sym":
            if val not in self.table:
                raise ParseError(f"unknown symbol {val!r} in {self.text!r}; declared: {', '.join(self.table.names)}")
            return self.table.symbol(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_coefficient(text: str, table: SymbolTable = DEFAULT_TABLE) -> Coefficient:
    """Parse a literal such as ``"-1/360*beta^2*(60*alpha^2 + 13*beta^2)"``."""
    return _Parser(text, table).parse()


def substitute(c: Coefficient, bindings: Mapping[str, Number]) -> Fraction:
    return c.substitute(bindings)


# ---------------------------------------------------------------------------

_bernoulli_cache = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2.

    Uses sum_{k=0}^{n} C(n+1, k) B_k = 0; values are memoized.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < len(_bernoulli_cache):
        return _bernoulli_cache[n]
    with _bernoulli_lock:
        cache = _bernoulli_cache
        for m in range(len(cache), n + 1):
            if m > 1 and m % 2:
                cache.append(Fraction(0))
                continue
            acc = sum((comb(m + 1, k) * cache[k] for k in range(m)), Fraction(0))
            cache.append(-acc / (m + 1))
        return cache[n]


def power_sum(k: int, s, t):
    """h_k(s, t) = sum_{i=0}^{k} s^i t^(k-i), i.e. (t^(k+1) - s^(k+1)) / (t - s).

    Accepts Fractions or Coefficients; defined also for s == t.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    total = 0
    s_pow = 1
    t_pows = [1]
    for _ in range(k):
        t_pows.append(t_pows[-1] * t)
    for i in range(k + 1):
        total = total + s_pow * t_pows[k - i]
        s_pow = s_pow * s
    if isinstance(total, int):
        total = Fraction(total)
    return total


def falling_binomial(rho, m: int):
    """Generalized binomial rho (rho-1) ... (rho-m+1) / m! for Fraction or Coefficient rho."""
    out = Fraction(1)
    for i in range(m):
        out = out * (rho - i)
    fact = 1
    for i in range(2, m + 1):
        fact *= i
    return out / fact
