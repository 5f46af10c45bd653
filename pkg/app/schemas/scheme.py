"""
Schemas for the list augmentation / random partition coloring scheme.
"""
from typing import Dict, FrozenSet, List, Optional

from pydantic import model_validator

from app.schemas.base import FrozenSchema
from app.schemas.graph import ListAssignment, PartialColoring


class SchemeState(FrozenSchema):
    """
    Augmented coloring phi and the sets derived from it.

    independent_sets[i - 1] holds I_i, the vertices phi colors with pi_colors[i - 1];
    core is H, every other vertex. palette is R, the union of the original lists.
    """
    s: int
    t: int
    lists: ListAssignment
    phi: Dict[int, int]
    pi_colors: List[int]
    independent_sets: List[FrozenSet[int]]
    core: FrozenSet[int]
    palette: FrozenSet[int]

    @model_validator(mode="after")
    def check_structure(self) -> "SchemeState":
        if set(self.pi_colors) & self.palette:
            raise ValueError("augmentation colors must lie outside the palette")
        if len(self.independent_sets) != self.u:
            raise ValueError("need one independent set per augmentation color")
        for v in self.core:
            if self.phi[v] not in self.palette:
                raise ValueError(f"core vertex {v} has augmentation color {self.phi[v]}")
        return self

    @property
    def u(self) -> int:
        return self.s - self.t

    @property
    def script_i(self) -> FrozenSet[int]:
        """Union of the independent sets I_1..I_u."""
        return frozenset().union(*self.independent_sets)

    def class_of_vertex(self, v: int) -> int:
        """0 for a core vertex, i for a vertex of I_i."""
        for i, members in enumerate(self.independent_sets, start=1):
            if v in members:
                return i
        return 0


class ColorPartition(FrozenSchema):
    """Partition of the palette into classes R_0..R_u."""
    classes: List[FrozenSet[int]]

    @property
    def assignment(self) -> Dict[int, int]:
        return {c: k for k, members in enumerate(self.classes) for c in members}

    @classmethod
    def from_assignment(cls, assignment: Dict[int, int], u: int) -> "ColorPartition":
        classes = [set() for _ in range(u + 1)]
        for color, k in assignment.items():
            classes[k].add(color)
        return cls(classes=[frozenset(members) for members in classes])


class MonteCarloEstimate(FrozenSchema):
    q: float
    trials: int
    seed: int
    mean_fraction: float
    stddev: float
    stderr: float


class SchemeOutcome(FrozenSchema):
    """Result of running the scheme on one instance."""
    s: int
    t: int
    coloring: PartialColoring
    colored_count: int
    expected_count: float
    guaranteed_minimum: int
    q_used: float
    seed: Optional[int] = None
    partition: ColorPartition
    expectation_trace: List[float] = []
