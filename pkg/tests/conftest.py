import pytest

from acmatch import PatternSet
from helpers import ACCEPTANCE_LINES, SET_AB, SET_HE


@pytest.fixture
def set_ab():
    return PatternSet.from_bytes(SET_AB)


@pytest.fixture
def set_he():
    return PatternSet.from_bytes(SET_HE)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
