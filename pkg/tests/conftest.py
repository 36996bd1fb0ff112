import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", deadline=None, max_examples=25)
settings.register_profile("thorough", deadline=None, max_examples=2000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[str, tuple[str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.monotonic()
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        label = marker.args[0] if marker.args else item.name
        # parametrized cases share a label: any failure sticks, times add up
        prev_status, prev_secs = _criteria.get(label, ("PASS", 0.0))
        status = "FAIL" if outcome.excinfo or prev_status == "FAIL" else "PASS"
        _criteria[label] = (status, prev_secs + time.monotonic() - start)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: (len(s.split(":")[0]), s)):
        status, secs = _criteria[label]
        terminalreporter.write_line(f"{status} {label} ({secs:.1f}s)")
