import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record ``(number, part, ok, detail)`` for the end-of-run acceptance summary."""

    def record(number, ok, detail="", part=None):
        _CRITERIA.setdefault(number, []).append((part, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(p[1] for p in parts)
        detail = "; ".join(
            (f"{name}: " if name else "") + ("ok" if good else "FAILED") + (f" ({d})" if d else "")
            for name, good, d in parts
        )
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
