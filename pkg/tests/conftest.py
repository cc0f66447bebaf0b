from __future__ import annotations

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def report():
    """Record a one-line verdict; all verdicts are repeated in the terminal summary."""

    def record(line: str) -> None:
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
