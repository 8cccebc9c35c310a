# bispectral/schemas/report.py
from __future__ import annotations
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class ReportStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    SOLVED = "solved"
    ABSENT = "absent"
    ERROR = "error"


EXIT_CODES = {
    ReportStatus.VERIFIED: 0,
    ReportStatus.SOLVED: 0,
    ReportStatus.FAILED: 1,
    ReportStatus.ABSENT: 1,
    ReportStatus.ERROR: 2,
}


class ResidualEntry(BaseModel):
    check: str  # "left" | "right" | constraint name
    row: int
    col: int
    value: str

    model_config = {"extra": "forbid"}


class ComparisonSummary(BaseModel):
    family: str
    relation: str
    computed_dim: int
    conjectured_dim: int
    joint_rank: int
    # elements of one span outside the other, as matrix text
    computed_outside: List[str] = Field(default_factory=list)
    conjectured_outside: List[str] = Field(default_factory=list)

    model_config = {"extra": "forbid"}


class Report(BaseModel):
    """
    Outcome of one command. Exact values travel as strings ("-2/3", "1/1");
    the model holds no floating-point fields.
    """

    command: str
    status: ReportStatus
    residuals: List[ResidualEntry] = Field(default_factory=list)
    dims: Dict[str, int] = Field(default_factory=dict)
    # coefficient vectors, laid out (degree, row, col)
    basis: List[List[str]] = Field(default_factory=list)
    bounds_used: Optional[Dict[str, int]] = None
    ms: int = 0
    comparison: Optional[ComparisonSummary] = None
    values: Dict[str, str] = Field(default_factory=dict)
    error: Optional[str] = None

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def validate_report(self):
        if self.status == ReportStatus.ERROR and not self.error:
            raise ValueError("error reports require an error message")
        if self.status != ReportStatus.ERROR:
            self.error = None
        return self

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_payload(self) -> Dict[str, Any]:
        payload = self.model_dump(mode="json", exclude_none=True)
        for key in ("command", "status", "residuals", "dims", "basis", "bounds_used", "ms"):
            payload.setdefault(key, None)
        return payload

    def to_text(self, quiet: bool = False) -> str:
        lines = [f"{self.command}: {self.status.value}"]
        if quiet:
            return lines[0]
        if self.error:
            lines.append(f"  error: {self.error}")
        for name, value in self.values.items():
            lines.append(f"  {name} = {value}")
        for name, value in self.dims.items():
            lines.append(f"  {name}: {value}")
        if self.bounds_used:
            lines.append("  bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds_used.items()))
        if self.residuals:
            lines.append("  nonzero residual entries:")
            for r in self.residuals:
                lines.append(f"    {r.check} ({r.row},{r.col}): {r.value}")
        elif self.status == ReportStatus.VERIFIED:
            lines.append("  residual: 0")
        if self.comparison is not None:
            c = self.comparison
            lines.append(f"  {c.family}: {c.relation} (computed {c.computed_dim}, conjectured {c.conjectured_dim}, joint {c.joint_rank})")
            for text in c.computed_outside:
                lines.append(f"    computed, outside {c.family}: {text}")
            for text in c.conjectured_outside:
                lines.append(f"    in {c.family}, not computed: {text}")
        for i, vec in enumerate(self.basis):
            lines.append(f"  basis[{i}]: [" + ", ".join(vec) + "]")
        lines.append(f"  ({self.ms} ms)")
        return "\n".join(lines)
