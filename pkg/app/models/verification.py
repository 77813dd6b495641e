from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from app.models.tableau import NeighborPair


class ChainCover(BaseModel):
    pair: NeighborPair
    window: List[Tuple[int, int]] = Field(..., description="Boxes (row, col) of the pair window")
    chains: List[List[int]] = Field(..., description="Entry sequences, each from C to C'")
    star_line: Tuple[int, int]


class HopOver(BaseModel):
    pair: NeighborPair
    line: Tuple[int, int]


class AuditReport(BaseModel):
    pairs_checked: int
    columns_checked: int
    lines_checked: int
    hop_overs: List[HopOver] = Field(default_factory=list)


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INVESTIGATE = "investigate"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    clause: Optional[str] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class RankCertificate(BaseModel):
    composition: List[int]
    prime: int
    seed: int
    trials: int
    dim_m: int
    dim_p: int
    ranks: List[int]
    expected_defect: int
    samples: List[Dict[str, int]] = Field(
        default_factory=list, description="Star coordinate -> sampled coefficient, per trial"
    )

    @property
    def defects(self) -> List[int]:
        return [self.dim_m - r for r in self.ranks]

    @property
    def passed(self) -> bool:
        return all(d == self.expected_defect for d in self.defects)


class VerificationSummary(BaseModel):
    composition: List[int]
    checks: List[CheckResult]

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed
