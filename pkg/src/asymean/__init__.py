"""asymean: asymptotic expansions of integral means in exact arithmetic.

The integral f-mean of s < t is I_f(s, t) = f^-1((1/(t-s)) int_s^t f).
For functions with a known asymptotic expansion this package computes

    I_f(x+s, x+t) ~ x (1 + a_1/x + a_2/x^2 + ...),   a_1 = (s+t)/2,

with every coefficient an exact rational function of s, t and the
function's parameters, and more generally solves B(A(x)) = C(x) for a
truncated series A.

Modules
-------
coeffield   exact multivariate rational functions, Bernoulli numbers
series      truncated series, powers and logarithms of series
solver      B(A(x)) = C(x): ascending and descending branches, composition
intmean     integral-mean expansions (power and logarithmic cases)
catalog     built-in functions: powers, log, digamma, polygamma, Wallis
verify      numeric oracles and error reports
intervals   interval enclosures (log, powers, digamma, polygamma)
render      text / LaTeX / JSON output
cli         the ``asymean`` command
"""

from __future__ import annotations

from .catalog import CatalogEntry, get_series, mean_of, parse_entry
from .coeffield import (
    DEFAULT_TABLE,
    Coefficient,
    Polynomial,
    SymbolTable,
    bernoulli,
    parse_coefficient,
    power_sum,
    substitute,
)
from .errors import (
    AsymeanError,
    ConditionError,
    ExponentError,
    MonotonicityError,
    ParseError,
    PrecisionError,
    TableBoundError,
    TruncationError,
)
from .intmean import MeanExpansion, MeanSpec, c_coeffs, d_coeffs, mean_expand, mean_expand_log, mean_expand_standard
from .series import (
    AsymptoticSeries,
    eval_truncated,
    log_series,
    pow_series,
    series_arith,
    series_from_json,
    series_to_json,
)
from .solver import compose, solve, solve_ascending, solve_descending, strip_constant
from .verify import error_report, inverse_mean_oracle, mean_value_oracle

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
