from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any
from enum import Enum

class CheckStatus(str, Enum):
    """Outcome of a single check"""
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"

class CheckResult(BaseModel):
    """One verified identity instance: both sides as exact values"""
    check_id: str = Field(..., alias="checkId", description="Stable id, used for ordering")
    suite: str
    anchor: str = Field(..., description="The identity under test")
    inputs: Dict[str, str] = Field(default_factory=dict)
    lhs: str = Field("", description="Left-hand side")
    rhs: str = Field("", description="Right-hand side")
    status: CheckStatus = CheckStatus.PASSED
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAILED

    class Config:
        populate_by_name = True

class MetricsSummary(BaseModel):
    """In-process counters exported with the report"""
    checks_total: Dict[str, float] = Field(default_factory=dict, alias="checksTotal")
    failures_total: Dict[str, float] = Field(default_factory=dict, alias="failuresTotal")
    duration_count: Dict[str, float] = Field(default_factory=dict, alias="durationCount")

    class Config:
        populate_by_name = True

class SuiteSummary(BaseModel):
    """Per-suite counts"""
    suite: str
    anchor: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0

class SuiteReport(BaseModel):
    """Versioned report of a run"""
    schema_version: str = Field("v1", alias="schema")
    suite: str
    config: Dict[str, Any] = Field(default_factory=dict)
    checked: int = 0
    failures: List[CheckResult] = Field(default_factory=list)
    suites: List[SuiteSummary] = Field(default_factory=list)
    checks: List[CheckResult] = Field(default_factory=list)
    metrics: MetricsSummary = Field(default_factory=MetricsSummary)

    @property
    def ok(self) -> bool:
        return not self.failures

    class Config:
        populate_by_name = True
