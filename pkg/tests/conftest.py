import pytest

from besselsum import PrecisionContext


@pytest.fixture
def ctx():
    return PrecisionContext(digits=40)


@pytest.fixture
def ctx60():
    return PrecisionContext(digits=60)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
