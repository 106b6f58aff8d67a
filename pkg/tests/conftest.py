import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qbforge.catalog import catalog, catalog_entries  # noqa: E402
from qbforge.forge import sweep  # noqa: E402

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    detail = ""
    if rep.failed:
        detail = str(rep.longrepr.reprcrash.message).splitlines()[0] if hasattr(
            rep.longrepr, "reprcrash") else "error"
    _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, detail = _CRITERIA[number]
        line = f"{verdict}  criterion {number}: {title}"
        if detail:
            line += f"  ({detail[:160]})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sweep4():
    return sweep(4)


@pytest.fixture(scope="session")
def shipped():
    return [catalog(name) for name in catalog_entries()]


@pytest.fixture(scope="session")
def g3():
    return catalog("godel:3")


@pytest.fixture(scope="session")
def l3():
    return catalog("lukasiewicz:3")


@pytest.fixture(scope="session")
def d5():
    return catalog("heyting-d5")
