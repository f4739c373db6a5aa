import os

import pytest

_ACCEPTANCE: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run the exhaustive size-5 checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("DQDLAB_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow mode only (--runslow or DQDLAB_SLOW=1)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = mark.args
        status = {"passed": "PASS", "failed": "FAIL"}.get(rep.outcome, "SKIP")
        _ACCEPTANCE.append(f"criterion {number:>4}  {status}  {title}  ({rep.duration:.2f} s)")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
