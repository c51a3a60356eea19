import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treehom.graph_core import complete_graph, cycle_graph, empty_graph, path_graph, star_graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def P2():
    """Path 0-1-2 (degrees 1, 2, 1)."""
    return path_graph(2)


@pytest.fixture
def C4():
    return cycle_graph(4)


@pytest.fixture
def images():
    return [
        path_graph(1),
        path_graph(2),
        path_graph(3),
        star_graph(3),
        cycle_graph(4),
        cycle_graph(5),
        complete_graph(3),
        complete_graph(4),
        empty_graph(3),
    ]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
