"""The integral mean of the digamma function.

psi(x) ~ log x - 1/(2x) - sum B_2k/(2k x^2k) has a logarithmic leading
term, so its mean goes through the logarithmic expansion path.  The
script prints the symbolic coefficients, then the numeric expansion for
s = -1/2, t = 1/2 and compares it with the mean computed by inverting
the exact integral  int psi = log Gamma.

Run:  python3 demos/digamma_mean.py
"""

from fractions import Fraction

from asymean import MeanSpec, eval_truncated, inverse_mean_oracle, mean_of, parse_entry
from asymean import intervals
from asymean.render import mean_text


def main() -> None:
    entry = parse_entry("digamma")
    print("symbolic:", mean_text(mean_of(entry, MeanSpec.symbolic(), 4)))

    s, t = Fraction(-1, 2), Fraction(1, 2)
    mean = mean_of(entry, MeanSpec.numeric(s, t), 8)
    print("s = -1/2, t = 1/2:", mean_text(mean))
    print()
    print(f"{'x':>6}  {'expansion':>24}  {'inverted integral':>24}")
    for x in [5, 10, 50, 100]:
        approx = eval_truncated(mean.series, Fraction(x))
        exact = inverse_mean_oracle(entry, x, s, t)
        print(f"{x:>6}  {float(approx):>24.17g}  {intervals.format_interval(exact, 17):>24}")


if __name__ == "__main__":
    main()
