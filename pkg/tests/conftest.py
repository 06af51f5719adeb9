from __future__ import annotations

from pathlib import Path

import pytest

from lambdastar import catalog
from lambdastar.follower import follower_graph

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def doubledoors():
    return catalog.doubledoors()


@pytest.fixture(scope="session")
def dichfail():
    return catalog.dichfail()


@pytest.fixture(scope="session")
def doubledoors_graph(doubledoors):
    return follower_graph(doubledoors)


@pytest.fixture(scope="session")
def dichfail_graph(dichfail):
    return follower_graph(dichfail)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
