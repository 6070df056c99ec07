import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = []


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Load (or compile) every JIT kernel before anything is timed.
    from dvsearch import RunConfig, run_search
    from dvsearch.bench import time_gates

    run_search(RunConfig(n=2, oracle="toy", m=1, t=1))
    time_gates(2, reps=1, min_batch_seconds=0.0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _acceptance.append((marker.args[0] if marker.args else item.name, item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit, name, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {crit}  ({name})")
