from pathlib import Path

import pytest

from undercut.syntax import parse_formula, parse_theory
from undercut.theory import Options

THEORIES = Path(__file__).resolve().parent.parent / "theories"


def load(name: str, **options):
    text = (THEORIES / f"{name}.thy").read_text(encoding="utf-8")
    return parse_theory(text, Options(**options) if options else None)


def F(text: str):
    return parse_formula(text)


@pytest.fixture
def collapse():
    return load("conflict_collapse")


@pytest.fixture
def two_chains():
    return load("two_chains")


@pytest.fixture
def prioritized():
    return load("prioritized")


@pytest.fixture
def kernel():
    return load("self_defeat")


@pytest.fixture
def john():
    return load("john")


@pytest.fixture
def party():
    return load("party")


@pytest.fixture
def penguin():
    return load("penguin")


# -- acceptance reporting ------------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    if report.when == "call" or report.failed or report.skipped:
        passed = report.passed and report.when == "call"
        _CRITERIA.setdefault(number, (title, passed))
        if not passed:
            _CRITERIA[number] = (title, False)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
