"""Shared fixtures: a session-wide log of acceptance criterion outcomes.

test_acceptance.py records one entry per numbered criterion; the terminal
summary hook prints them as explicit PASS/FAIL lines after the test run so
the outcome of each criterion is visible even when pytest output is long.
"""

import pytest

CRITERION_RESULTS: list[tuple[int, bool, str]] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    CRITERION_RESULTS.append((number, passed, detail))


@pytest.fixture(scope="session")
def criterion_log():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, passed, detail in sorted(CRITERION_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:02d}: {status} - {detail}")
