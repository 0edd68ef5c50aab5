import json
from pathlib import Path

import pytest

import facility_game as fg
from facility_game import _backend

DATA = Path(__file__).parent / "data"
EXAMPLE = Path(fg.__file__).parent / "data" / "example_8_vertex.json"


@pytest.fixture(scope="session")
def example_path():
    return EXAMPLE


@pytest.fixture(scope="session")
def example_doc():
    return json.loads(EXAMPLE.read_text())


@pytest.fixture(scope="session")
def example():
    return fg.example_scenario()


@pytest.fixture(scope="session")
def example_oracle(example):
    return fg.all_pairs_shortest_paths(example.network)


@pytest.fixture(scope="session")
def example_tensor(example, example_oracle):
    return fg.payoff_tensor(example, example_oracle)


@pytest.fixture(params=_backend.available_backends())
def backend(request):
    return request.param


@pytest.fixture
def no_equilibrium_path():
    return DATA / "no_pure_equilibrium.json"


# -- acceptance summary ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("criterion")
    if label is not None:
        _criteria[label] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
        mark = "PASS" if _criteria[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label}")


@pytest.fixture(autouse=True)
def _record_criterion(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", marker.args[0])
