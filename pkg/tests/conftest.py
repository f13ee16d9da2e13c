"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

_RESULTS = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        _RESULTS[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, dur) in _RESULTS.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line("%-4s %-55s %7.2f s" % (
            "PASS" if outcome == "passed" else "FAIL", name, dur))
