import pytest

from flaggamma.catalog import icosahedron
from flaggamma.complex_core import cycle, octahedral_sphere


@pytest.fixture
def octahedron():
    return octahedral_sphere(3)


@pytest.fixture
def ico():
    return icosahedron()


@pytest.fixture
def c5():
    return cycle(5)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
