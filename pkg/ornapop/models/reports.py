"""
Pydantic models for verdicts and reports produced by the toolkit.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


# ── Enums ──


class ViolationKind(str, Enum):
    """Which ornamentation axiom a candidate breaks."""

    TOP = "top"
    CONNECTIVITY = "connectivity"
    OVERLAP = "overlap"


class PopkCondition(str, Enum):
    """Necessary / characterizing conditions for Pop^k membership."""

    RANK = "rank"
    HUG = "hug"
    BEADS = "beads"
    TAMARI_I = "tamari-i"
    TAMARI_II = "tamari-ii"


# ── Validation ──


class ValidationReport(BaseModel):
    """Outcome of checking the two ornamentation axioms."""

    ok: bool
    kind: Optional[ViolationKind] = None
    nodes: list[int] = Field(default_factory=list)
    message: str = ""


# ── Pop^k ──


class PopkFailure(BaseModel):
    """One failed condition together with the nodes that witness it."""

    condition: PopkCondition
    witness: list[int]
    detail: str = ""


class PopkReport(BaseModel):
    """Aggregated Pop^k condition check; ``verdict`` is pass iff no failures."""

    k: int
    failures: list[PopkFailure] = Field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def passed(self) -> bool:
        return not self.failures


# ── Semidistributivity ──


class SemidistributivityReport(BaseModel):
    """Result of Barnard's cover-local check on an enumerated lattice."""

    tree: str
    ok: bool
    covers_checked: int = 0
    lower: Optional[int] = Field(default=None, description="Index of the covered element x'")
    upper: Optional[int] = Field(default=None, description="Index of the covering element x")
    reason: str = ""


# ── Verification ──


class SuiteFailure(BaseModel):
    """A single failing instance inside an acceptance suite."""

    suite: str
    instance: str
    expected: str
    actual: str


class SuiteResult(BaseModel):
    name: str
    instances: int = 0
    failures: list[SuiteFailure] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class VerificationReport(BaseModel):
    """Deterministically ordered outcome of ``verify``."""

    max_nodes: int
    suites: list[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)
