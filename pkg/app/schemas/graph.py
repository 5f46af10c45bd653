"""
Graph, list assignment and partial coloring schemas.
"""
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Tuple

from pydantic import ConfigDict, Field, model_validator

from app.schemas.base import FrozenSchema

Edge = Tuple[int, int]


class Graph(FrozenSchema):
    """
    Simple undirected graph on vertices 1..n.

    Edges are stored as (u, v) with u < v.
    """
    n: int = Field(ge=0)
    edges: FrozenSet[Edge] = frozenset()

    @model_validator(mode="before")
    @classmethod
    def normalize_edges(cls, data):
        if isinstance(data, dict) and "edges" in data:
            data = dict(data)
            data["edges"] = frozenset(
                (min(a, b), max(a, b)) for a, b in data["edges"]
            )
        return data

    @model_validator(mode="after")
    def check_simple(self) -> "Graph":
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a}, {b}) outside 1..{self.n}")
        return self

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        return cls(n=n, edges=frozenset(edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        neighbors: Dict[int, set] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            neighbors[a].add(b)
            neighbors[b].add(a)
        return {v: frozenset(nbrs) for v, nbrs in neighbors.items()}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return not any(a in chosen and b in chosen for a, b in self.edges)


class ListAssignment(FrozenSchema):
    """
    Color lists per vertex.

    JSON form: {"t": 2, "lists": {"1": [1, 2], "2": [2, 3]}}
    """
    lists: Dict[int, FrozenSet[int]]
    uniform_size: Optional[int] = Field(default=None, alias="t", ge=1)

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @model_validator(mode="after")
    def check_lists(self) -> "ListAssignment":
        for vertex, colors in self.lists.items():
            if not colors:
                raise ValueError(f"vertex {vertex} has an empty list")
            if any(c < 0 for c in colors):
                raise ValueError(f"vertex {vertex} has a negative color")
            if self.uniform_size is not None and len(colors) != self.uniform_size:
                raise ValueError(
                    f"vertex {vertex} has {len(colors)} colors, expected {self.uniform_size}"
                )
        return self

    @classmethod
    def uniform(cls, lists: Dict[int, Iterable[int]]) -> "ListAssignment":
        """Build an assignment and record the common list size, if there is one."""
        frozen = {v: frozenset(colors) for v, colors in lists.items()}
        sizes = {len(colors) for colors in frozen.values()}
        size = sizes.pop() if len(sizes) == 1 else None
        return cls(lists=frozen, uniform_size=size)

    @property
    def palette(self) -> FrozenSet[int]:
        """The union R of all lists."""
        return frozenset().union(*self.lists.values())

    @property
    def list_size(self) -> Optional[int]:
        if self.uniform_size is not None:
            return self.uniform_size
        sizes = {len(colors) for colors in self.lists.values()}
        return sizes.pop() if len(sizes) == 1 else None

    def for_vertex(self, v: int) -> FrozenSet[int]:
        return self.lists[v]

    def to_json_dict(self) -> dict:
        return {
            "t": self.list_size,
            "lists": {str(v): sorted(self.lists[v]) for v in sorted(self.lists)},
        }


class PartialColoring(FrozenSchema):
    """
    Vertex -> color, or None for uncolored.

    JSON form: {"colors": {"1": 2, "3": null}}
    """
    colors: Dict[int, Optional[int]]

    def color_of(self, v: int) -> Optional[int]:
        return self.colors.get(v)

    @property
    def colored(self) -> Dict[int, int]:
        return {v: c for v, c in self.colors.items() if c is not None}

    @property
    def colored_count(self) -> int:
        return len(self.colored)

    def uncolor(self, v: int) -> "PartialColoring":
        colors = dict(self.colors)
        colors[v] = None
        return PartialColoring(colors=colors)

    def to_json_dict(self) -> dict:
        return {"colors": {str(v): self.colors[v] for v in sorted(self.colors)}}


class Violation(FrozenSchema):
    """A properness or list-membership failure of a partial coloring."""
    kind: Literal["edge", "list", "unknown_vertex"]
    vertices: Tuple[int, ...]
    color: Optional[int] = None


class PartialColoringCheck(FrozenSchema):
    colored_count: int
    ok: bool
    violations: List[Violation] = []


class DegeneracyOrder(FrozenSchema):
    """Min-degree elimination order and the largest degree seen at removal."""
    order: List[int]
    degeneracy: int
