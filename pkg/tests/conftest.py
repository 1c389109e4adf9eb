"""Collect test_criterion_* outcomes and print a one-line-per-criterion table."""

import re

_TITLES = {
    1: "figure caption rotation numbers",
    2: "nested-pencil fixture and map conjugacy",
    3: "rotation number grid vs orbit estimates",
    4: "porism closure and polynomial certificates",
    5: "duality and nesting monotonicity",
    6: "Cayley determinant classification",
    7: "composed map schedules",
    8: "bicentric circle formulas",
    9: "elliptic function identities",
    10: "singular limit behaviour",
}

_PATTERN = re.compile(r"test_criterion_0*(\d+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _PATTERN.search(report.nodeid)
    if m is None:
        return
    n = int(m.group(1))
    _outcomes[n] = _outcomes.get(n, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        status = "PASS" if _outcomes[n] else "FAIL"
        terminalreporter.write_line(
            "criterion %2d  %-44s %s" % (n, _TITLES.get(n, ""), status)
        )
