import contextlib

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CRITERIA: list[tuple[str, bool, str]] = []


@contextlib.contextmanager
def _record(label: str, detail: list):
    try:
        yield detail
    except BaseException:
        _CRITERIA.append((label, False, "; ".join(detail)))
        raise
    _CRITERIA.append((label, True, "; ".join(detail)))


@pytest.fixture
def criterion():
    """``with criterion("3a sandwich") as notes: ...`` records one acceptance line."""
    return lambda label: _record(label, [])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
