import pytest

# (criterion number, verdict, detail) rows filled in by test_acceptance
ACCEPTANCE: list[tuple[int, str, str]] = []


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool | None, detail: str = ""):
        verdict = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        ACCEPTANCE.append((number, verdict, detail))
        print(f"criterion {number}: {verdict} {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {detail}")
