import numpy as np
import pytest

_criteria: dict[int, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture(scope="session")
def criterion():
    """Record one pass/fail line per acceptance criterion for the run summary."""

    def record(num: int, ok: bool, detail: str) -> bool:
        _criteria[num] = "criterion %02d: %s - %s" % (num, "PASS" if ok else "FAIL", detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_criteria):
            terminalreporter.write_line(_criteria[num])
