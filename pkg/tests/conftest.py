import pytest

from arcforge.arcs import enumerate_arc_classes
from arcforge.surface import standard_fixture


@pytest.fixture(scope="session")
def t1():
    return standard_fixture("torus-1-marked")


@pytest.fixture(scope="session")
def t2():
    return standard_fixture("torus-2-marked")


@pytest.fixture(scope="session")
def pool6(t2):
    return enumerate_arc_classes(t2, 6)


@pytest.fixture(scope="session")
def search6(t2):
    from arcforge.search import search

    return search(t2, 6, 1)


@pytest.fixture(scope="session")
def catalog6(search6):
    from arcforge.search import catalog

    return catalog(search6)


def pytest_configure(config):
    config._acceptance_lines = {}


def pytest_terminal_summary(terminalreporter, config):
    lines = config._acceptance_lines
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
