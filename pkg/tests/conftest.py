"""Shared test plumbing.

The acceptance tests record one verdict line per criterion; the lines are
echoed in a block at the end of the pytest run so the criterion outcomes
are visible even when the run is long.
"""

import pytest

_CRITERION_LINES = []


@pytest.fixture(scope="session")
def criterion_line():
    """Record a PASS/FAIL line for one acceptance criterion and return
    the boolean so tests can `assert criterion_line(...)`."""

    def record(num: int, ok: bool, text: str) -> bool:
        word = "PASS" if ok else "FAIL"
        _CRITERION_LINES.append((num, f"{word}  criterion {num}: {text}"))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(_CRITERION_LINES):
            terminalreporter.write_line(line)
