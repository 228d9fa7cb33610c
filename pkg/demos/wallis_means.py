"""Means of the Wallis ratio Gamma(x+t')/Gamma(x+s').

The ratio W(x) = Gamma(x+t')/Gamma(x+s') and its power W^(1/(t'-s'))
have expansions with coefficients that are polynomials in
alpha' = (s'+t'-1)/2 and beta' = (1-(t'-s')^2)/4.  The script prints
the built-in coefficient tables, the means I_W and I_F, and checks the
series for W against mpmath's Gamma at one point.

Run:  python3 demos/wallis_means.py
"""

from fractions import Fraction

import mpmath

from asymean import intervals
from asymean import MeanSpec, eval_truncated, get_series, mean_of, parse_entry
from asymean.catalog import wallis_c_table, wallis_q_table
from asymean.render import mean_text


def main() -> None:
    print("Q_n (power W^(1/(t'-s'))):")
    for n, q in enumerate(wallis_q_table()):
        print(f"  Q_{n} = {q}")
    print("C_n (ratio W), derived from Q:")
    for n, c in enumerate(wallis_c_table()[:4]):
        print(f"  C_{n} = {c}")
    print()
    spec = MeanSpec.symbolic()
    print("I_F:", mean_text(mean_of(parse_entry("wallis_power"), spec, 5)))
    print("I_W:", mean_text(mean_of(parse_entry("wallis_ratio"), spec, 3)))
    print()

    entry = parse_entry("wallis_ratio:s=1/3,t=1")
    series = get_series(entry, 6)
    x = Fraction(40)
    approx = eval_truncated(series, x)
    with mpmath.workprec(200):
        exact = mpmath.gamma(mpmath.mpf(41)) / mpmath.gamma(40 + mpmath.mpf(1) / 3)
        print(f"W(40) with s' = 1/3, t' = 1:  series {intervals.format_interval(approx, 20)}")
        print(f"                              Gamma  {mpmath.nstr(exact, 20)}")


if __name__ == "__main__":
    main()
