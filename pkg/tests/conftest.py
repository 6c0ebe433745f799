import pytest

from autopart import fixtures

# filled by test_acceptance; one line per criterion
ACCEPTANCE_LINES = []


@pytest.fixture
def hw():
    return fixtures.hardware()


@pytest.fixture
def sw():
    return fixtures.software()


@pytest.fixture
def m1():
    return fixtures.mapping_m1()


@pytest.fixture
def m2():
    return fixtures.mapping_m2()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
