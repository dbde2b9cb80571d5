from collections import defaultdict

import pytest

_criteria: dict[int, dict] = defaultdict(lambda: {"title": "", "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = next((m for m in getattr(report, "acceptance", ())), None)
    if marker is None:
        return
    number, title = marker
    entry = _criteria[number]
    entry["title"] = title
    entry["outcomes"].append((report.nodeid.split("::")[-1], report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report.acceptance = [(marker.args[0], marker.args[1])]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = all(outcome == "passed" for _, outcome in entry["outcomes"])
        tr.write_line(f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  {entry['title']}")
        if not ok:
            for name, outcome in entry["outcomes"]:
                if outcome != "passed":
                    tr.write_line(f"              {outcome}: {name}")
