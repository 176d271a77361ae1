import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from overlayselect import config  # noqa: E402

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def cfg():
    return config.load()


@pytest.fixture(scope="session")
def umts(cfg):
    return cfg.interface("UMTS")


@pytest.fixture(scope="session")
def wlan(cfg):
    return cfg.interface("WLAN")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        _acceptance.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _acceptance:
        terminalreporter.write_line(f"[{status}] {label}")
