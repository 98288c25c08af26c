from __future__ import annotations

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from transpension import zoo  # noqa: E402
from transpension.caps import reset_caps  # noqa: E402
from transpension.fincat import FinCategory  # noqa: E402

ACCEPTANCE = {}
BUDGET = 60.0
_START = []


def poset(n, less, name="P"):
    """The poset category on 0..n-1 for the reflexive-transitive order ``less``."""
    mors, idx = [], {}
    for a in range(n):
        for b in range(n):
            if a == b or less(a, b):
                idx[(a, b)] = len(mors)
                mors.append(((a, b), a, b))
    comp = {(idx[(b, c)], idx[(a, b)]): idx[(a, c)]
            for (a, b) in idx for (b2, c) in idx if b2 == b}
    return FinCategory(list(range(n)), mors, [idx[(a, a)] for a in range(n)], comp, name=name)


@pytest.fixture(scope="session")
def box2():
    return zoo.entry("affine-cubes", {"k": 2}).multiplier()


@pytest.fixture(scope="session")
def cart2():
    return zoo.entry("cartesian-cubes", {"k": 2}).multiplier()


@pytest.fixture(scope="session")
def twisted():
    return zoo.entry("twisted-cubes").multiplier()


@pytest.fixture(autouse=True)
def _fresh_caps():
    reset_caps()
    yield
    reset_caps()


def pytest_sessionstart(session):
    _START.append(time.perf_counter())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
        elapsed = time.perf_counter() - _START[0]
        verdict = "PASS" if elapsed < BUDGET else "FAIL"
        terminalreporter.write_line(f"suite time: {verdict} ({elapsed:.1f}s, budget {BUDGET:.0f}s)")
