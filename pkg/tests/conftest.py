import sys
from pathlib import Path

import pytest

from agendakit import fixtures

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent.parent / "data"


@pytest.fixture
def pair():
    return fixtures.pair()


@pytest.fixture
def simple4():
    return fixtures.simple4()


@pytest.fixture
def conj():
    return fixtures.conj()


@pytest.fixture
def bicond():
    return fixtures.bicond()


@pytest.fixture
def alg3():
    return fixtures.alg3()


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, title = results[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
