"""Prints one PASS/FAIL line per acceptance criterion after the run."""

_results = {}


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords or not report.nodeid.split("::")[-1].startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[report.nodeid] = report.outcome


def _number(nodeid):
    return int(nodeid.split("test_criterion_")[1].split("_")[0])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_results.items(), key=lambda kv: _number(kv[0])):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
