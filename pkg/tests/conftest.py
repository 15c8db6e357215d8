import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Collect one PASS/FAIL line per acceptance criterion for the summary."""

    def record(line):
        _ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
