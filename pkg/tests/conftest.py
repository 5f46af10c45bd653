"""
Pytest configuration file.
"""
import pytest
from typer.testing import CliRunner

from app.schemas.graph import Graph, ListAssignment
from app.services import graph_core
from app.services.graph_core import GraphFamily


@pytest.fixture
def k3() -> Graph:
    return graph_core.generate(GraphFamily.COMPLETE, 3)


@pytest.fixture
def c4() -> Graph:
    return graph_core.generate(GraphFamily.CYCLE, 4)


@pytest.fixture
def c5() -> Graph:
    return graph_core.generate(GraphFamily.CYCLE, 5)


@pytest.fixture
def k33() -> Graph:
    return graph_core.generate(GraphFamily.COMPLETE_BIPARTITE, 3, 3)


@pytest.fixture
def petersen() -> Graph:
    return graph_core.generate(GraphFamily.PETERSEN)


@pytest.fixture
def c5_lists(c5) -> ListAssignment:
    """Random 2-lists on C5 from a palette of 4 colors."""
    return graph_core.random_list_assignment(c5, t=2, palette=4, seed=0)


@pytest.fixture
def identical_k3_lists() -> ListAssignment:
    """Lists {1, 2} on every vertex of K3; at most two vertices are colorable."""
    return ListAssignment(lists={v: frozenset({1, 2}) for v in (1, 2, 3)}, uniform_size=2)


@pytest.fixture
def runner() -> CliRunner:
    """
    Create a command line test runner.
    """
    return CliRunner()
