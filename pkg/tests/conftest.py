import pytest

_ACCEPTANCE = []


@pytest.fixture
def acceptance_report():
    """Record one pass/fail line per acceptance criterion."""
    def report(number, title, ok, detail=""):
        _ACCEPTANCE.append((number, title, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] AC{number}: {title} {detail}")
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{number}: {title} {detail}")
