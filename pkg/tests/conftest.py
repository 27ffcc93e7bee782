import pytest

from helpers import ACCEPTANCE_LINES, example_cover, example_space


@pytest.fixture
def space():
    return example_space()


@pytest.fixture
def cover():
    return example_cover()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
