from pathlib import Path

import pytest

from ttgs.graph import from_weights

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        _criteria.append(line)
        print(line)
        return ok

    return record


# s=0 a=1 b=2 c=3
DIAMOND_ARCS = [(0, 1, 1), (0, 2, 4), (1, 3, 2), (2, 3, 1)]
# s=0 p'=1 p*=2 u=3 v=4
MIXING_ARCS = [(0, 1, 0), (0, 2, 5), (1, 3, 100), (2, 3, 0), (3, 4, 0)]
# s=0 a=1 b=2
NEG_CYCLE_ARCS = [(0, 1, -1), (1, 2, -1), (2, 1, -1)]


@pytest.fixture
def diamond():
    return from_weights(4, 0, DIAMOND_ARCS)


@pytest.fixture
def mixing():
    return from_weights(5, 0, MIXING_ARCS)


@pytest.fixture
def neg_cycle():
    return from_weights(3, 0, NEG_CYCLE_ARCS, allow_negative=True)
