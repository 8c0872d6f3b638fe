import json
from collections import OrderedDict
from pathlib import Path

import pytest

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    ordered = OrderedDict(sorted(_CRITERIA.items()))
    _CRITERIA.clear()
    _CRITERIA.update(ordered)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if not mark:
        return
    entry = _CRITERIA[mark.args[0]]
    if report.failed:
        entry["failed"] += 1
    elif report.when == "call" and report.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, entry in _CRITERIA.items():
        if entry["failed"]:
            status = "FAIL"
        elif entry["passed"]:
            status = "PASS"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(
            f"criterion {number:2d} {status}: {entry['title']} "
            f"({entry['passed']} passed, {entry['failed']} failed)")


@pytest.fixture(scope="session")
def frozen():
    return json.loads((Path(__file__).parent / "data" / "oracle_frozen.json").read_text())
