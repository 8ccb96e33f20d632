import sys
from pathlib import Path

import pytest

import grautkit.poly

sys.path.insert(0, str(Path(__file__).parent))

# every Poly built during the tests re-checks its no-zero-coefficient invariant
grautkit.poly.CHECK_INVARIANTS = True

_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    failed = report.failed and report.when in ("setup", "call")
    if report.when == "call" or failed:
        prev = _criteria.get(n, (True, ""))
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _criteria[n] = (prev[0] and not failed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, doc = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {doc}")
