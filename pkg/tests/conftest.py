from __future__ import annotations

import pytest

from rankhull import codes
from rankhull.field import make_tower

# F_4 = F_2[x]/(x^2 + x + 1): w is x, w2 = w + 1.
F4 = {"0": 0, "1": 1, "w": 2, "w2": 3}

ACCEPTANCE_LINES: list[str] = []


def f4(rows):
    return [[F4[x] for x in row] for row in rows]


@pytest.fixture(autouse=True)
def _cross_check(monkeypatch):
    monkeypatch.setattr(codes, "CROSS_CHECK", True)


@pytest.fixture(scope="session")
def t4():
    return make_tower(2, 1, 2)


@pytest.fixture(scope="session")
def example_hull2(t4):
    return codes.make_code(t4, f4([["1", "0", "w", "w2"], ["0", "1", "w2", "w"]]))


@pytest.fixture(scope="session")
def example_hull1(t4):
    return codes.make_code(t4, f4([["1", "w", "0", "w2"], ["0", "w", "0", "1"]]))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
