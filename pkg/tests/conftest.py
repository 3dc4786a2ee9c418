import numpy as np
import pytest

_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = report.user_properties and dict(report.user_properties).get("criterion")
    if number:
        _RESULTS[number] = (report.outcome, dict(report.user_properties).get("criterion_text", ""))


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", marker.args[0])
        record_property("criterion_text", marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        outcome, text = _RESULTS[number]
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{tag}] criterion {number:>2}: {text}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
