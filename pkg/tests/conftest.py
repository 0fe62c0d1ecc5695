import pytest

from frey13.elimination import load_factors, load_newforms
from frey13.frey import build_family
from frey13.traces import all_trace_sets

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def family():
    return build_family()


@pytest.fixture(scope="session")
def trace_sets():
    return all_trace_sets()


@pytest.fixture(scope="session")
def newforms():
    return load_newforms()


@pytest.fixture(scope="session")
def factors():
    return load_factors()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
