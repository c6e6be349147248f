from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    prev = ACCEPTANCE.get(criterion)
    if prev is None or prev[0]:
        ACCEPTANCE[criterion] = (ok, detail if not ok else (prev[1] if prev else detail))


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
