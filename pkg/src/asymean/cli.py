"""Command-line interface: ``asymean {expand,solve,verify,catalog}``.

Exit status: 0 success, 1 malformed input, 2 a mathematical precondition
failed, 3 a numeric oracle missed its precision target.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import intervals
from .catalog import catalog_listing, mean_of, parse_entry
from .coeffield import DEFAULT_TABLE, parse_coefficient
from .errors import AsymeanError, ParseError, PrecisionError
from .intmean import MeanSpec
from .render import mean_json, mean_latex, mean_text, series_latex, series_text
from .series import series_from_json, series_to_json
from .solver import solve
from .verify import error_report

PRECISION_ENV = "ASYMEAN_PRECISION_BITS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _order(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("order must be >= 1")
    return n


def _orders(text: str) -> list:
    try:
        out = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be a comma-separated list of integers: {text!r}")
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError("orders must be non-negative")
    return out


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="asymean", description="Asymptotic expansions of integral means.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("expand", help="expand I_f(x+s, x+t) for a catalog function")
    e.add_argument("--f", required=True, help="entry spec, e.g. digamma, power:r=1/2, ratpoly:[1,1]@u=-2")
    e.add_argument("--s", help="left endpoint offset (symbolic s when omitted)")
    e.add_argument("--t", help="right endpoint offset (symbolic t when omitted)")
    e.add_argument("--symbolic", action="store_true", help="keep s and t symbolic (the default)")
    e.add_argument("--order", type=_order, default=4)
    e.add_argument("--format", choices=("text", "json", "latex"), default="text")
    e.add_argument("--display", choices=("alphabeta", "st"), default="alphabeta")

    s = sub.add_parser("solve", help="solve B(A(x)) = C(x) for A")
    s.add_argument("--B", required=True, type=Path, help="series JSON file for B")
    s.add_argument("--C", required=True, type=Path, help="series JSON file for C")
    s.add_argument("--branch", choices=("asc", "desc"), default="asc")
    s.add_argument("--order", type=_order, default=8)
    s.add_argument("--format", choices=("text", "json", "latex"), default="text")

    v = sub.add_parser("verify", help="compare truncated means with a numeric oracle")
    v.add_argument("--f", required=True)
    v.add_argument("--x", required=True, type=_rational)
    v.add_argument("--s", required=True, type=_rational)
    v.add_argument("--t", required=True, type=_rational)
    v.add_argument("--orders", type=_orders, default=[2, 3, 4])
    v.add_argument("--precision", type=int, default=None, help="interval precision in bits")
    v.add_argument("--simpson", type=_orders, default=[], help="composite Simpson node counts to compare")
    v.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("catalog", help="list the built-in functions")
    return p


_NEG_VALUE = re.compile(r"^-\d")


def _join_negative_values(argv: list) -> list:
    """Allow ``--s -1/2``: glue option values that look like negative numbers."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _precision(requested) -> int:
    if requested is not None:
        bits = requested
    else:
        env = os.environ.get(PRECISION_ENV)
        if env is None:
            return intervals.DEFAULT_PRECISION
        try:
            bits = int(env)
        except ValueError:
            raise ParseError(f"{PRECISION_ENV} must be an integer, got {env!r}") from None
    if bits < 16:
        raise ParseError("precision must be at least 16 bits")
    return bits


def _cmd_expand(args, out) -> None:
    entry = parse_entry(args.f)
    if (args.s is None) != (args.t is None):
        raise ParseError("give both --s and --t, or neither")
    if args.s is None or args.symbolic:
        spec = MeanSpec.symbolic(DEFAULT_TABLE, args.display)
    else:
        spec = MeanSpec(parse_coefficient(args.s), parse_coefficient(args.t), args.display)
    mean = mean_of(entry, spec, args.order)
    if args.format == "json":
        out.write(mean_json(mean))
    elif args.format == "latex":
        out.write(mean_latex(mean) + "\n")
    else:
        out.write(mean_text(mean) + "\n")


def _read_series(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return series_from_json(text)


def _cmd_solve(args, out) -> None:
    B, C = _read_series(args.B), _read_series(args.C)
    A = solve(B, C, args.order, "ascending" if args.branch == "asc" else "descending")
    if args.format == "json":
        out.write(series_to_json(A))
    elif args.format == "latex":
        out.write(series_latex(A) + "\n")
    else:
        out.write(series_text(A) + "\n")


def _cmd_verify(args, out) -> None:
    entry = parse_entry(args.f)
    prec = _precision(args.precision)
    report = error_report(entry, args.x, args.s, args.t, args.orders, prec, args.simpson)
    out.write(report.to_json() if args.format == "json" else report.to_text())


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
    except _UsageError as exc:
        err.write(f"asymean: usage error: {exc}\n")
        return 1
    try:
        if args.command == "expand":
            _cmd_expand(args, out)
        elif args.command == "solve":
            _cmd_solve(args, out)
        elif args.command == "verify":
            _cmd_verify(args, out)
        else:
            out.write(catalog_listing())
    except ParseError as exc:
        err.write(f"asymean: {type(exc).__name__}: {exc}\n")
        return 1
    except PrecisionError as exc:
        err.write(f"asymean: {type(exc).__name__}: {exc}\n")
        return 3
    except (AsymeanError, ValueError, ZeroDivisionError) as exc:
        err.write(f"asymean: {type(exc).__name__}: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
