import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record ``(number, title, ok, seconds, limit)`` for the acceptance summary."""
    def record(number, title, ok, seconds, limit):
        _ACCEPTANCE[number] = (title, ok and seconds <= limit, seconds, limit)
        return ok and seconds <= limit
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok, seconds, limit = _ACCEPTANCE[n]
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}  ({seconds:.2f}s, limit {limit:g}s)")
