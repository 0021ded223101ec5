"""Shared test plumbing: per-criterion pass/fail reporting for the gate suite."""

CRITERIA: dict[int, str] = {}


def record_criterion(number: int, name: str, ok: bool, detail: str = "") -> bool:
    """Register one acceptance-criterion outcome and echo a pass/fail line."""
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number} {status}: {name}"
    if detail:
        line += f" [{detail}]"
    CRITERIA[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[number])
