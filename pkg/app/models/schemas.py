from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from app.models.lines import LineLabel
from app.models.verification import VerificationSummary

REPORT_SCHEMA_VERSION = 1


# Request/Response Schemas
class VerifyRequest(BaseModel):
    """Verification request for the HTTP surface"""

    composition: str = Field(..., description="Comma- or space-separated parts", min_length=1)
    rank: bool = Field(True, description="Include the rank certificate")
    trials: Optional[int] = Field(None, ge=1)
    prime: Optional[int] = None
    seed: Optional[int] = None


class ReportCell(BaseModel):
    row: int
    col: int
    entry: int
    repeat: bool = Field(..., description="Cell lies outside the numbered diagram")


class ReportLine(BaseModel):
    i: int
    j: int
    label: LineLabel
    left: Tuple[int, int] = Field(..., description="(row, col) of i")
    right: Tuple[int, int] = Field(..., description="(row, col) of j")


class ReportSection(BaseModel):
    e: List[Tuple[int, int]]
    v: List[Tuple[int, int]]
    quadruplets: List[Tuple[int, int, int, int]]
    evs_extras: List[Tuple[int, int]]


class Report(BaseModel):
    """Versioned JSON report; identical input gives byte-identical output unless timing is requested"""

    schema_version: int = Field(REPORT_SCHEMA_VERSION, alias="schema")
    composition: List[int]
    n: int
    tableau: List[List[int]] = Field(..., description="Columns of the numbered tableau")
    extended: List[ReportCell] = Field(..., description="Cells of the composition tableau, row-major")
    composition_map: List[int]
    lines: List[ReportLine]
    section: ReportSection
    verification: Optional[VerificationSummary] = None
    timing: Optional[Dict[str, float]] = None

    model_config = {"populate_by_name": True}
