import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> summary detail, filled by the acceptance tests
CRITERIA_DETAIL: dict[int, str] = {}
CRITERIA_OUTCOME: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, detail: str) -> None:
        CRITERIA_DETAIL[number] = detail

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)_", item.name)
    if m and (rep.when == "call" or rep.failed):
        n = int(m.group(1))
        if rep.failed or CRITERIA_OUTCOME.get(n) != "FAIL":
            CRITERIA_OUTCOME[n] = "FAIL" if rep.failed else ("PASS" if rep.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_OUTCOME:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(CRITERIA_OUTCOME):
        detail = CRITERIA_DETAIL.get(n, "")
        terminalreporter.write_line(f"criterion {n}: {CRITERIA_OUTCOME[n]}  {detail}".rstrip())
