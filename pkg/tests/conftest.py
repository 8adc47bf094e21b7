"""Shared fixtures: acceptance-line recording and terminal summary."""

from __future__ import annotations

import pytest

_ACCEPTANCE_LINES: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion.

    Lines are printed immediately (visible with ``-s``) and repeated in
    the terminal summary so a plain ``pytest`` run shows the full
    scorecard in one place.
    """

    def record(index: int, description: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE_LINES.append((index, description, passed, detail))
        status = "PASS" if passed else "FAIL"
        suffix = f" [{detail}]" if detail else ""
        print(f"ACCEPTANCE {index:02d} {status} - {description}{suffix}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for index, description, passed, detail in sorted(_ACCEPTANCE_LINES):
        status = "PASS" if passed else "FAIL"
        suffix = f" [{detail}]" if detail else ""
        terminalreporter.write_line(f"{index:02d} {status} - {description}{suffix}")
