import pytest

from reentrant_casimir.lifshitz import HalfSpacePair
from reentrant_casimir.materials import EMPTY, PERFECT, builtin_material

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def au_al():
    return HalfSpacePair(builtin_material("Al"), builtin_material("Au"))


@pytest.fixture(scope="session")
def nb_al():
    return HalfSpacePair(builtin_material("Al"), builtin_material("Nb"))


@pytest.fixture(scope="session")
def pc_pair():
    return HalfSpacePair(PERFECT, PERFECT)


@pytest.fixture(scope="session")
def vacuum_pair():
    return HalfSpacePair(builtin_material("Al"), EMPTY)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
