import pytest

CRITERIA = []


@pytest.fixture
def criterion():
    def record(number, title, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        CRITERIA.append((number, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(CRITERIA):
            terminalreporter.write_line(line)
