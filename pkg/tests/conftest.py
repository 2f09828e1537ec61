"""Acceptance reporting: one PASS/FAIL line per criterion after the run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::(?:\w+::)?test_(a\d+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    key = m.group(1).upper()
    if report.when == "call":
        _results[key] = report.passed
    elif report.failed:  # setup or teardown error counts as a failure
        _results[key] = False
    elif report.when == "setup" and report.skipped:
        _results.setdefault(key, None)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: int(k[1:])):
        ok = _results[key]
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"ACCEPTANCE {key}: {status}")
