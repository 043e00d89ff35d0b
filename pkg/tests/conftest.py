from pathlib import Path

import pytest

from modgon.engine import propagate
from modgon.facts import load_facts
from modgon.fields import ff
from modgon.model import load_model, reduce_model
from modgon.points import closed_points, load_point_pool

DATA = Path(__file__).parent.parent / "src" / "modgon" / "data"
MODELS = DATA / "models"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def g5_int():
    return load_model(MODELS / "g5_tetragonal_f3.model")


@pytest.fixture(scope="session")
def g5(g5_int):
    return reduce_model(g5_int, ff(3, 1))


@pytest.fixture(scope="session")
def g5_pool(g5):
    return closed_points(g5, 4)


@pytest.fixture(scope="session")
def g10_int():
    return load_model(MODELS / "g10_veronese_f3.model")


@pytest.fixture(scope="session")
def g10(g10_int):
    return reduce_model(g10_int, ff(3, 1))


@pytest.fixture(scope="session")
def g10_pool(g10):
    pool, hyperplane = load_point_pool(MODELS / "g10_veronese_f3.points", g10)
    return pool, hyperplane


@pytest.fixture(scope="session")
def paper_facts():
    return load_facts(DATA / "facts" / "paper_facts.txt")


@pytest.fixture(scope="session")
def table_ledger(paper_facts):
    return propagate(list(range(21, 41)), paper_facts)


def pytest_terminal_summary(terminalreporter):
    # Surface the per-criterion result lines even when the tests pass,
    # since passing tests normally have their stdout swallowed.
    lines = []
    for report in terminalreporter.getreports("passed"):
        if report.when == "call" and "test_acceptance" in report.nodeid:
            lines.extend(
                line for line in report.capstdout.splitlines()
                if line.startswith("CRITERION")
            )
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
