import pytest

# verdict lines collected by tests/test_acceptance.py, echoed after the run
acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
