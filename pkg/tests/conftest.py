import pytest

_RESULTS = []


class CriterionLog:
    """Collects one pass/fail line per acceptance criterion."""

    def __call__(self, number: int, title: str):
        return _Criterion(number, title)


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number:>2} {status}: {self.title}"
        if self.detail:
            line += f" ({self.detail})"
        _RESULTS.append((self.number, line))
        print(line)
        return False


@pytest.fixture
def criterion():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_RESULTS):
            terminalreporter.write_line(line)
