"""
Graph core module.

DIMACS ingestion, canonical graph families, random list assignments,
partial coloring validation and degeneracy ordering.
"""
import enum
import logging
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import ValidationError

from app.core.exceptions import DimacsParseError, InvalidParametersError, ListAssignmentError
from app.schemas.graph import (
    DegeneracyOrder,
    Graph,
    ListAssignment,
    PartialColoring,
    PartialColoringCheck,
    Violation,
)

logger = logging.getLogger(__name__)

_DIMACS_FORMATS = {"edge", "edges", "col"}


class GraphFamily(str, enum.Enum):
    """Generated graph families."""
    COMPLETE = "complete"
    CYCLE = "cycle"
    PATH = "path"
    COMPLETE_BIPARTITE = "complete_bipartite"
    PETERSEN = "petersen"
    GRID = "grid"


def parse_dimacs(text: Union[bytes, str]) -> Graph:
    """
    Parse a DIMACS .col graph.

    Args:
        text: contents with `c` comments, one `p edge n m` header and `e u v` lines

    Returns:
        Graph: the declared vertices with duplicate edges collapsed

    Raises:
        DimacsParseError: on undecodable bytes, a malformed header, an out-of-range vertex or a loop
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DimacsParseError(f"input is not valid UTF-8 (byte offset {e.start})") from e

    n: Optional[int] = None
    declared_edges = 0
    edge_lines = 0
    edges: Set[Tuple[int, int]] = set()

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        kind = tokens[0]

        if kind == "p":
            if n is not None:
                raise DimacsParseError("duplicate problem line", line_number)
            if len(tokens) != 4 or tokens[1] not in _DIMACS_FORMATS:
                raise DimacsParseError(f"malformed problem line: {line!r}", line_number)
            try:
                n, declared_edges = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DimacsParseError(f"non-integer sizes in {line!r}", line_number)
            if n < 0 or declared_edges < 0:
                raise DimacsParseError("negative sizes in problem line", line_number)

        elif kind == "e":
            if n is None:
                raise DimacsParseError("edge before problem line", line_number)
            if len(tokens) != 3:
                raise DimacsParseError(f"malformed edge line: {line!r}", line_number)
            try:
                a, b = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsParseError(f"non-integer vertex in {line!r}", line_number)
            if not (1 <= a <= n and 1 <= b <= n):
                raise DimacsParseError(f"vertex out of range 1..{n} in {line!r}", line_number)
            if a == b:
                raise DimacsParseError(f"loop at vertex {a}", line_number)
            edges.add((min(a, b), max(a, b)))
            edge_lines += 1

        else:
            raise DimacsParseError(f"unknown line type {kind!r}", line_number)

    if n is None:
        raise DimacsParseError("missing problem line")
    if declared_edges not in (edge_lines, len(edges)):
        logger.warning(
            f"DIMACS header declares {declared_edges} edges, found {edge_lines} lines "
            f"({len(edges)} distinct)"
        )
    return Graph(n=n, edges=frozenset(edges))


def serialize_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines.extend(f"e {a} {b}" for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """Relabel any networkx graph onto 1..n (sorted node order) and convert it."""
    relabeled = nx.convert_node_labels_to_integers(nx_graph, first_label=1, ordering="sorted")
    return Graph(n=relabeled.number_of_nodes(), edges=frozenset(relabeled.edges()))


def to_networkx(g: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(g.vertices)
    nx_graph.add_edges_from(g.edges)
    return nx_graph


def generate(
    family: Union[GraphFamily, str],
    size: Optional[int] = None,
    second: Optional[int] = None,
) -> Graph:
    """
    Build the canonical labeled graph of a family.

    Args:
        family: one of GraphFamily
        size: order (complete, cycle, path), side length (grid) or first part size
        second: second part size for complete_bipartite (defaults to size)

    Raises:
        InvalidParametersError: if the size is invalid for the family
    """
    try:
        family = GraphFamily(family)
    except ValueError:
        raise InvalidParametersError(f"unknown graph family {family!r}")

    if family is GraphFamily.PETERSEN:
        return from_networkx(nx.petersen_graph())

    minimum = 3 if family is GraphFamily.CYCLE else 1
    if size is None or size < minimum:
        raise InvalidParametersError(f"{family.value} needs size >= {minimum}, got {size}")

    if family is GraphFamily.COMPLETE:
        nx_graph = nx.complete_graph(size)
    elif family is GraphFamily.CYCLE:
        nx_graph = nx.cycle_graph(size)
    elif family is GraphFamily.PATH:
        nx_graph = nx.path_graph(size)
    elif family is GraphFamily.GRID:
        nx_graph = nx.grid_2d_graph(size, size)
    else:
        second = size if second is None else second
        if second < 1:
            raise InvalidParametersError(f"complete_bipartite needs parts >= 1, got {second}")
        nx_graph = nx.complete_bipartite_graph(size, second)
    return from_networkx(nx_graph)


def random_list_assignment(g: Graph, t: int, palette: int, seed: int) -> ListAssignment:
    """Give every vertex t distinct colors drawn uniformly from 1..palette."""
    if t < 1 or palette < t:
        raise InvalidParametersError(f"need 1 <= t <= palette, got t={t}, palette={palette}")
    rng = np.random.default_rng(seed)
    lists = {
        v: frozenset(int(c) + 1 for c in rng.choice(palette, size=t, replace=False))
        for v in g.vertices
    }
    return ListAssignment(lists=lists, uniform_size=t)


def load_list_assignment(text: Union[bytes, str]) -> ListAssignment:
    """Parse the {"t": .., "lists": {"1": [..]}} JSON form."""
    try:
        return ListAssignment.model_validate_json(text)
    except ValidationError as e:
        raise ListAssignmentError(f"invalid list assignment: {e}") from e


def load_partial_coloring(text: Union[bytes, str]) -> PartialColoring:
    try:
        return PartialColoring.model_validate_json(text)
    except ValidationError as e:
        raise ListAssignmentError(f"invalid partial coloring: {e}") from e


def check_covers(g: Graph, l: ListAssignment) -> None:
    """Raise unless every vertex of g has a list."""
    missing = [v for v in g.vertices if v not in l.lists]
    if missing:
        raise ListAssignmentError(f"no list for vertices {missing[:10]}")


def validate_partial(g: Graph, l: ListAssignment, pc: PartialColoring) -> PartialColoringCheck:
    """
    Check properness and list membership of a partial coloring.

    Vertices missing from pc count as uncolored. Violations are reported, not raised.
    """
    violations: List[Violation] = []
    colored = pc.colored

    for v in sorted(colored):
        if not 1 <= v <= g.n:
            violations.append(Violation(kind="unknown_vertex", vertices=(v,), color=colored[v]))
        elif v not in l.lists or colored[v] not in l.lists[v]:
            violations.append(Violation(kind="list", vertices=(v,), color=colored[v]))

    for a, b in sorted(g.edges):
        if a in colored and b in colored and colored[a] == colored[b]:
            violations.append(Violation(kind="edge", vertices=(a, b), color=colored[a]))

    colored_count = sum(1 for v in colored if 1 <= v <= g.n)
    return PartialColoringCheck(
        colored_count=colored_count,
        ok=not violations,
        violations=violations,
    )


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    remaining_degree: Dict[int, int] = {v: g.degree(v) for v in g.vertices}
    order: List[int] = []
    degeneracy = 0
    while remaining_degree:
        v = min(remaining_degree, key=lambda x: (remaining_degree[x], x))
        degeneracy = max(degeneracy, remaining_degree.pop(v))
        order.append(v)
        for w in g.adjacency[v]:
            if w in remaining_degree:
                remaining_degree[w] -= 1
    return DegeneracyOrder(order=order, degeneracy=degeneracy)


def degeneracy_bound(g: Graph) -> int:
    """
    Degeneracy plus one.

    Greedy coloring in reverse elimination order sees at most d colored
    neighbors per vertex, so g is s-choosable for every s >= d + 1.
    """
    return degeneracy_order(g).degeneracy + 1


def greedy_list_coloring(
    g: Graph,
    l: ListAssignment,
    order: Optional[Iterable[int]] = None,
) -> PartialColoring:
    """
    Color vertices in the given order (default: reverse degeneracy order),
    each with its smallest list color unused by colored neighbors.

    A vertex with no free color stays uncolored.
    """
    if order is None:
        order = reversed(degeneracy_order(g).order)
    colors: Dict[int, Optional[int]] = {v: None for v in g.vertices}
    for v in order:
        taken = {colors[w] for w in g.adjacency[v]}
        free = sorted(l.lists[v] - taken)
        colors[v] = free[0] if free else None
    return PartialColoring(colors=colors)
