from __future__ import annotations

import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from asymean import DEFAULT_TABLE

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

T = DEFAULT_TABLE
P = T.coef  # parse a coefficient literal or lift a number


def small_fractions(max_num: int = 9, max_den: int = 6, nonzero: bool = False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    if nonzero:
        s = s.filter(lambda q: q != 0)
    return s


@pytest.fixture
def table():
    return T


# -- acceptance summary ------------------------------------------------------
#
# tests/test_acceptance.py records each criterion's sub-results here; the
# terminal summary prints one PASS/FAIL line per criterion.  A criterion
# passes only if every recorded part passed.

ACCEPTANCE: dict = {}
SUITE_BUDGET_SECONDS = 60.0
_SESSION_START = [0.0]


def record(criterion: int, ok: bool, note: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), note))


def acceptance_lines(elapsed: float | None = None) -> list:
    lines = []
    for k in sorted(ACCEPTANCE):
        parts = list(ACCEPTANCE[k])
        if k == 10 and elapsed is not None:
            parts.append((elapsed < SUITE_BUDGET_SECONDS, f"suite runtime {elapsed:.1f} s"))
        ok = all(p for p, _ in parts)
        notes = "; ".join(f"{n}{'' if p else ' [FAIL]'}" for p, n in parts)
        lines.append(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {notes}")
    return lines


def pytest_sessionstart(session):
    _SESSION_START[0] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _SESSION_START[0]
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines(elapsed):
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"suite runtime: {elapsed:.1f} s (budget {SUITE_BUDGET_SECONDS:.0f} s)")
