import pytest

from exception_curves import validate_pair

from .cases import ACCEPTANCE_RESULTS, PUBLISHED_N5


@pytest.fixture
def n5_pair():
    return validate_pair(*PUBLISHED_N5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
