"""
Verification report schemas.
"""
from datetime import datetime, timezone
from typing import Any, Dict, List, Literal

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """
    One claim checked against an observation.

    Conjecture checks report findings; only primary checks decide the exit code.
    """
    label: str
    expected: Any
    observed: Any
    passed: bool
    tolerance: float = 0.0
    kind: Literal["primary", "conjecture", "info"] = "primary"


class VerificationReport(BaseModel):
    command: str
    inputs: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    checks: List[CheckResult] = []
    version: str
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.kind == "primary")

    def add_check(
        self,
        label: str,
        expected: Any,
        observed: Any,
        passed: bool,
        tolerance: float = 0.0,
        kind: str = "primary",
    ) -> CheckResult:
        check = CheckResult(
            label=label,
            expected=expected,
            observed=observed,
            passed=bool(passed),
            tolerance=tolerance,
            kind=kind,
        )
        self.checks.append(check)
        return check
