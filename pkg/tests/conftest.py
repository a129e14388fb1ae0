from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "example relations R1/R2/R3 linearity",
    2: "betweenness and sandwich sweep, |X|=4, m<=3",
    3: "extension sweep, |Z| in {2,3}, |X| in {4,5}, m<=2",
    4: "ultrafilter rule conformance, principal U over |N| in {2,3}",
    5: "WP+IIA rules are dictatorial via their decisive ultrafilter",
    6: "baseline violations found and replayed from JSON",
    7: "ultrafilter rule neutrality and qualitative IIA",
    8: "enumeration counts against brute force",
    9: "difference rule strict-operator axioms, m<=8",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is not None:
        _outcomes.setdefault(n, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status:7} {title} ({len(results or [])} tests)")
