import pytest

from posetmorse.fixtures import load_fixture


@pytest.fixture(scope="session")
def fig1x():
    return load_fixture("FIG1X")


@pytest.fixture(scope="session")
def fig3x():
    return load_fixture("FIG3X")


@pytest.fixture(scope="session")
def fig4x():
    return load_fixture("FIG4X")


@pytest.fixture(scope="session")
def sq2():
    return load_fixture("SQ2")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
