from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckResult(BaseModel):
    """Outcome of a single verification check.

    Attributes:
        name: Check identifier.
        passed: Whether the residual is within tolerance.
        max_residual: Largest residual observed.
        tolerance: Tolerance the residual was held to (0 for exact checks).
        detail: Free text describing the instance(s) checked.
    """

    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def status(self) -> Literal["pass", "fail"]:
        return "pass" if self.passed else "fail"


class VerificationReport(BaseModel):
    """Result of the invariant battery run at one ladder size.

    Attributes:
        N: Ladder size the battery ran at.
        seed: Seed of the randomised checks.
        trials: Random instances per randomised check.
        checks: Every check, in execution order.
        resolved_sum_limits: Summation ranges used by the closed-form phase.
    """

    N: int
    seed: int
    trials: int
    checks: list[CheckResult] = Field(default_factory=list)
    resolved_sum_limits: dict[str, str] = Field(default_factory=dict)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @computed_field
    @property
    def summary(self) -> dict[str, str]:
        return {check.name: check.status for check in self.checks}

    def add(self, check: CheckResult) -> VerificationReport:
        """Append a check."""
        self.checks.append(check)
        return self
