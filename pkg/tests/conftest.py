import pytest
from hypothesis import settings

from localortho.graph import build_graph
from localortho.scenario import Scenario

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the (4,2,2) classification")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def s222():
    return Scenario(2, 2, 2)


@pytest.fixture(scope="session")
def s322():
    return Scenario(3, 2, 2)


@pytest.fixture(scope="session")
def s422():
    return Scenario(4, 2, 2)


@pytest.fixture(scope="session")
def g222(s222):
    return build_graph(s222)


@pytest.fixture(scope="session")
def g322(s322):
    return build_graph(s322)


@pytest.fixture(scope="session")
def g422(s422):
    return build_graph(s422)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
        if not any(line.split()[1] == "7" for line in test_acceptance.RESULTS):
            terminalreporter.write_line("SKIP 7 (4,2,2) classification: run with --slow")
