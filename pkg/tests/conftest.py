import pytest

_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; the test still asserts on its own."""

    def record(name, ok, detail):
        _VERDICTS.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
