"""Classical means of two nearby numbers, expanded around a large x.

The logarithmic, geometric, identric and generalized logarithmic means of
x+s and x+t are all integral means I_f for simple f.  Writing
alpha = (s+t)/2 and beta = (t-s)/2, each one has the shape

    x + alpha + a_2/x + a_3/x^2 + ...

and this script prints the first few a_n exactly, in alpha and beta.

Run:  python3 demos/classical_means.py
"""

from asymean import MeanSpec, mean_of, parse_entry
from asymean.render import mean_text

MEANS = [
    ("logarithmic mean  L   (f = 1/x)", "power:r=-1"),
    ("geometric mean    G   (f = 1/x^2)", "power:r=-2"),
    ("identric mean     I   (f = log x)", "log"),
    ("generalized L_r       (f = x^(r-1))", "power:r=r"),
]


def main() -> None:
    spec = MeanSpec.symbolic()
    for title, entry in MEANS:
        mean = mean_of(parse_entry(entry), spec, 5)
        print(title)
        print("   ", mean_text(mean))
        print()
    # the arithmetic mean is the identity case: the expansion terminates
    print("arithmetic mean   A   (f = x)")
    print("   ", mean_text(mean_of(parse_entry("power:r=1"), spec, 5)))


if __name__ == "__main__":
    main()
