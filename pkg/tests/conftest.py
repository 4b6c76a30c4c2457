import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planeform import _accel  # noqa: E402
from planeform.groups import catalog, close_group  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    _accel.warmup()


@pytest.fixture(scope="session")
def group_catalog():
    return catalog(seed=0)


@pytest.fixture(scope="session")
def closures(group_catalog):
    return {name: close_group(spec) for name, spec in group_catalog.items()}


ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None or report.when != "call":
        return
    ACCEPTANCE[crit] = ("PASS" if report.passed else "FAIL", dict(report.user_properties).get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[crit]
        terminalreporter.write_line(f"criterion {crit}: {status} {detail}".rstrip())
