import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""

    def record(number, ok, detail=""):
        ACCEPTANCE[number] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
