"""
Schemas package initialization.
"""
from app.schemas.base import FrozenSchema
from app.schemas.bounds import (
    BoundParams,
    IntPolynomial,
    LemmaBounds,
    LemmaCheck,
    QValue,
    RatioEntry,
    RatioReport,
    RootCertificate,
)
from app.schemas.graph import (
    DegeneracyOrder,
    Graph,
    ListAssignment,
    PartialColoring,
    PartialColoringCheck,
    Violation,
)
from app.schemas.solvers import ChiResult, ChoosabilityResult, LambdaResult
from app.schemas.scheme import (
    ColorPartition,
    MonteCarloEstimate,
    SchemeOutcome,
    SchemeState,
)
from app.schemas.report import CheckResult, VerificationReport

__all__ = [
    "FrozenSchema",
    "BoundParams",
    "IntPolynomial",
    "LemmaBounds",
    "LemmaCheck",
    "QValue",
    "RatioEntry",
    "RatioReport",
    "RootCertificate",
    "DegeneracyOrder",
    "Graph",
    "ListAssignment",
    "PartialColoring",
    "PartialColoringCheck",
    "Violation",
    "ChiResult",
    "ChoosabilityResult",
    "LambdaResult",
    "ColorPartition",
    "MonteCarloEstimate",
    "SchemeOutcome",
    "SchemeState",
    "CheckResult",
    "VerificationReport",
]
