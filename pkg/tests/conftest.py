import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Report the test's ``@pytest.mark.criterion(number, title)`` line.

    The test calls ``criterion(ok, detail)``; a test that raises before
    reporting is logged as FAIL on teardown.
    """
    mark = request.node.get_closest_marker("criterion")
    number, title = mark.args
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    done = []

    def log(ok: bool, detail: str) -> str:
        line = f"CRITERION {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        request.config.stash[_ACCEPTANCE].append((number, line))
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        done.append(line)
        return line

    def record(ok: bool, detail: str = "") -> None:
        line = log(ok, detail)
        assert ok, line

    yield record
    if not done:
        log(False, "raised before reporting")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
