"""Solving B(A(x)) = C(x) for a truncated series A.

With B(y) = y^2 + 1/y and C(x) = x^2 the equation A^2 + 1/A = x^2 has a
large root A ~ x (ascending branch) and a small root A ~ x^-2
(descending branch).  The small root is x^-2 u(x^-6) where
u = 1 + e u^3, whose coefficients are binom(3k, k)/(2k+1).

Run:  python3 demos/solve_composition.py
"""

from math import comb

from asymean import AsymptoticSeries, compose, solve_ascending, solve_descending
from asymean.render import series_text

B = AsymptoticSeries([1, 0, 0, 1], 2, exact=True)     # x^2 + x^-1
C = AsymptoticSeries([1], 2, exact=True)              # x^2


def main() -> None:
    big = solve_ascending(B, C, 12)
    print("large root: A =", series_text(big))
    small = solve_descending(B, C, 30)
    print("small root: A =", series_text(small))
    print()
    print(" k   computed   binom(3k,k)/(2k+1)")
    for k in range(6):
        print(f"{k:>2}   {str(small.coeffs[6 * k]):>8}   {comb(3 * k, k) // (2 * k + 1):>8}")
    check = compose(B, small, 30)
    print()
    print("B(A(x)) for the small root:", series_text(check))


if __name__ == "__main__":
    main()
