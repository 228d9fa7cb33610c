"""How accurate is a truncated expansion?  f(x) = x^-2 + x^-3 on [x-5, x+5].

For this f the mean I_f is known in closed form, so the relative error
of f at the truncated mean I_N (terms down to x^-N) can be enclosed
rigorously with interval arithmetic.  The errors are compared with
composite Simpson quadrature of the same integral, and the script shows
that the error falls off like x^-(N+2).

Run:  python3 demos/numeric_accuracy.py
"""

import math
from fractions import Fraction

from asymean import error_report, mean_value_oracle, parse_entry
from asymean import intervals

F = parse_entry("ratpoly:[1,1]@u=-2")


def mid(v) -> float:
    lo, hi = intervals.bounds(v)
    return float((lo + hi) / 2)


def main() -> None:
    value = mean_value_oracle(F, 105, -5, 5).value
    print(f"(1/10) int_100^110 f = {value} = {float(value):.10e}")
    print()
    print(error_report(F, 105, -5, 5, [4, 5, 6], simpson_nodes=[17, 33, 105]).to_text())
    print()
    print(error_report(F, 1005, -5, 5, [6], simpson_nodes=[33]).to_text())
    print()
    N = 4
    xs = [10 ** 3, 10 ** 4, 10 ** 5]
    errs = [mid(error_report(F, x, -5, 5, [N]).rows[0].rel_error) for x in xs]
    for (x0, e0), (x1, e1) in zip(zip(xs, errs), zip(xs[1:], errs[1:])):
        slope = (math.log(e1) - math.log(e0)) / (math.log(x1) - math.log(x0))
        print(f"slope of log error between x = {x0} and {x1}: {slope:.3f} (predicted {-(N + 2)})")


if __name__ == "__main__":
    main()
