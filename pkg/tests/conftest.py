import pytest

_criteria: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome, then assert it."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        _criteria.append((number, title, bool(ok), detail))
        assert ok, f"criterion {number} ({title}) failed: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_criteria):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")
