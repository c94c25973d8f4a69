from fractions import Fraction

import pytest

from conecalc.cones import Cone
from conecalc.indicators import Sampler


@pytest.fixture
def sampler():
    return Sampler(7)


@pytest.fixture
def quadrant():
    return Cone(2, [(1, 0), (0, 1)])


@pytest.fixture
def half_line():
    return Cone(1, [(1,)])


def F(x):
    return Fraction(x)


ACCEPTANCE: dict[int, str] = {}


def record(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
