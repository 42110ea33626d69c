import pytest

from nonfree import Interpreter

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion checked by a test")


def pytest_runtest_logreport(report):
    mark = report.user_properties and dict(report.user_properties).get("criterion")
    if not mark:
        return
    failed = report.failed
    if report.when == "call" or failed:
        ok = _outcomes.get(mark, True) and not failed
        _outcomes[mark] = ok


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {key}: {'PASS' if _outcomes[key] else 'FAIL'}")


@pytest.fixture(scope="session")
def interp():
    """A shared session with the full prelude; tests must not redefine names."""
    return Interpreter()


@pytest.fixture(scope="session")
def ev(interp):
    return interp.eval_show
