import pytest

CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, checks)`` with checks = {name: bool}."""

    def record(n, checks):
        bad = [k for k, ok in checks.items() if not ok]
        CRITERIA[n] = (not bad, "all checks" if not bad else "failed: " + ", ".join(bad))
        line = f"CRITERION {n}: {'PASS' if not bad else 'FAIL'} ({CRITERIA[n][1]})"
        print(line)
        assert not bad, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} ({detail})")
