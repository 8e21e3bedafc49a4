"""
Result model for invariant suites.

A suite is a callable returning a list of Check records. The runner wraps
each execution in a SuiteResult that moves through
pending -> running -> passed / failed / error.
"""

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Optional

import numpy as np


class SuiteStatus(str, Enum):
    """
    Enumeration of possible suite states.

    Attributes:
        PENDING: Suite is registered but has not started.
        RUNNING: Suite is executing.
        PASSED: Every asserted check passed.
        FAILED: At least one asserted check failed.
        ERROR: The suite raised or timed out.
    """

    PENDING = "pending"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"

    def __str__(self) -> str:
        """Return the string value of the status."""
        return self.value


@dataclass(frozen=True)
class Check:
    """
    One measured quantity of a suite.

    Attributes:
        name: Short identifier, e.g. "diff-identity a=0.5 b=-0.5".
        value: Measured value (discrepancy, ratio, slope, ...).
        threshold: The bound the value was compared with.
        passed: Outcome of the comparison.
        asserted: Reported-only checks (False) never fail a suite.
    """

    name: str
    value: float
    threshold: float
    passed: bool
    asserted: bool = True

    @classmethod
    def at_most(cls, name: str, value: float, threshold: float, asserted: bool = True) -> "Check":
        """value <= threshold; NaN never passes."""
        value = float(value)
        return cls(name, value, float(threshold), bool(value <= threshold), asserted)

    @classmethod
    def at_least(cls, name: str, value: float, threshold: float, asserted: bool = True) -> "Check":
        """value >= threshold; NaN never passes."""
        value = float(value)
        return cls(name, value, float(threshold), bool(value >= threshold), asserted)

    @classmethod
    def within(
        cls, name: str, value: float, lo: float, hi: float, asserted: bool = True
    ) -> "Check":
        """lo <= value <= hi; the threshold records the half-width."""
        value = float(value)
        return cls(name, value, (hi - lo) / 2.0, bool(lo <= value <= hi), asserted)

    @classmethod
    def report(cls, name: str, value: float) -> "Check":
        """A measured value that is reported but never asserted."""
        return cls(name, float(value), float("nan"), True, asserted=False)

    @property
    def failed(self) -> bool:
        return self.asserted and not self.passed

    def to_dict(self) -> dict[str, Any]:
        def clean(v: float) -> Optional[float]:
            return v if math.isfinite(v) else None

        return {
            "name": self.name,
            "value": clean(self.value),
            "threshold": clean(self.threshold),
            "passed": self.passed,
            "asserted": self.asserted,
        }


@dataclass
class SuiteContext:
    """
    Inputs shared by every suite of a run.

    Attributes:
        seed: Base seed; each suite adds its own offset.
        literal_h: Compare quadrature norms against h_n without the 4^n factor.
    """

    seed: int = 42
    literal_h: bool = False

    def rng(self, offset: int) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)


SuiteFn = Callable[[SuiteContext], list[Check]]


@dataclass
class SuiteResult:
    """
    Outcome of one suite execution.

    Example:
        >>> result = SuiteResult.create("quadrature", group="core")
        >>> print(result.status)
        pending
        >>> result.mark_running()
        >>> result.mark_finished([Check.at_most("exactness", 1e-15, 1e-12)])
        >>> print(result.status)
        passed
    """

    name: str
    group: str
    status: SuiteStatus = SuiteStatus.PENDING
    checks: list[Check] = field(default_factory=list)
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    error: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("Suite name must not be empty")

    @classmethod
    def create(cls, name: str, group: str) -> "SuiteResult":
        return cls(name=name, group=group)

    def mark_running(self) -> None:
        """
        Raises:
            ValueError: If the suite is not pending.
        """
        if self.status != SuiteStatus.PENDING:
            raise ValueError(f"Cannot mark suite as running: current status is {self.status}")
        self.status = SuiteStatus.RUNNING
        self.started_at = datetime.now(timezone.utc)

    def mark_finished(self, checks: list[Check]) -> None:
        """
        Store the checks and derive passed/failed from the asserted ones.

        Raises:
            ValueError: If the suite is not running.
        """
        if self.status != SuiteStatus.RUNNING:
            raise ValueError(f"Cannot mark suite as finished: current status is {self.status}")
        self.checks = list(checks)
        failed = any(c.failed for c in self.checks)
        self.status = SuiteStatus.FAILED if failed else SuiteStatus.PASSED
        self.completed_at = datetime.now(timezone.utc)

    def mark_error(self, error: str) -> None:
        """
        Raises:
            ValueError: If the suite is not running.
        """
        if self.status != SuiteStatus.RUNNING:
            raise ValueError(f"Cannot mark suite as errored: current status is {self.status}")
        self.status = SuiteStatus.ERROR
        self.error = error
        self.completed_at = datetime.now(timezone.utc)

    @property
    def ok(self) -> bool:
        return self.status == SuiteStatus.PASSED

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.failed]

    @property
    def duration(self) -> Optional[float]:
        """Execution time in seconds, None until finished."""
        if self.started_at and self.completed_at:
            return (self.completed_at - self.started_at).total_seconds()
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "group": self.group,
            "status": self.status.value,
            "checks": [c.to_dict() for c in self.checks],
            "started_at": self.started_at.isoformat() if self.started_at else None,
            "completed_at": self.completed_at.isoformat() if self.completed_at else None,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SuiteResult":
        def number(v: Optional[float]) -> float:
            return float("nan") if v is None else float(v)

        return cls(
            name=data["name"],
            group=data["group"],
            status=SuiteStatus(data["status"]),
            checks=[
                Check(
                    c["name"],
                    number(c["value"]),
                    number(c["threshold"]),
                    c["passed"],
                    c["asserted"],
                )
                for c in data.get("checks", [])
            ],
            started_at=(
                datetime.fromisoformat(data["started_at"]) if data.get("started_at") else None
            ),
            completed_at=(
                datetime.fromisoformat(data["completed_at"]) if data.get("completed_at") else None
            ),
            error=data.get("error"),
        )

    @classmethod
    def from_json(cls, json_str: str) -> "SuiteResult":
        return cls.from_dict(json.loads(json_str))

    def __repr__(self) -> str:
        return (
            f"SuiteResult(name={self.name!r}, status={self.status}, "
            f"checks={len(self.checks)}, failures={len(self.failures)})"
        )
