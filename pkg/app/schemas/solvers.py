"""
Exact solver result schemas.
"""
from typing import Optional

from app.schemas.base import FrozenSchema
from app.schemas.graph import ListAssignment, PartialColoring


class LambdaResult(FrozenSchema):
    """lambda_t with the assignment attaining the minimum and its best partial coloring."""
    t: int
    value: int
    witness_assignment: ListAssignment
    witness_coloring: PartialColoring
    assignments_visited: int
    nodes: int


class ChoosabilityResult(FrozenSchema):
    s: int
    ok: bool
    bad: Optional[ListAssignment] = None
    nodes: int


class ChiResult(FrozenSchema):
    chi_ell: int
    chi: int
    bad_assignment: Optional[ListAssignment] = None
