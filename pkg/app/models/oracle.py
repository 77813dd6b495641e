from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.tableau import BoxCoord


class Staircase(BaseModel):
    """Maximal chain of columns of heights u, u+1, ..., c, each with a left neighbour"""

    height: int = Field(..., description="u, height of the first column")
    depth: int = Field(..., description="c, height of the last column")
    columns: List[int] = Field(..., description="i_u..i_c")
    base: BoxCoord = Field(..., description="Box in row u of the rightmost column of height >= u left of i_u")
    base_entry: int
    profile: List[int] = Field(..., description="base column followed by i_u..i_c")
    right_extremal: bool = Field(..., description="No column of height >= c right of i_c")


class WitnessKind(str, Enum):
    STAIRCASE_BASE = "staircase_base"
    LOWER_PART = "lower_part"


class ExtremalWitness(BaseModel):
    row: int = Field(..., description="Row t of the composition map")
    entry: int
    kind: WitnessKind
    box: BoxCoord
    staircase: Optional[Staircase] = None


class ExtremalReport(BaseModel):
    right_extremal: List[int] = Field(..., description="Entries with no right-going 1-line")
    witnesses: List[ExtremalWitness]

    @property
    def witnessed(self) -> List[int]:
        return sorted(w.entry for w in self.witnesses)

    @property
    def consistent(self) -> bool:
        return sorted(self.right_extremal) == self.witnessed
