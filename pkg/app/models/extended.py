from enum import Enum
from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.tableau import BoxCoord, Composition


class StopKind(str, Enum):
    END_OF_DIAGRAM = "EndOfDiagram"
    TALL_COLUMN = "TallColumn"
    BLOCKED_CELL = "BlockedCell"
    NO_DESCENT = "NoDescent"


class StopRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: StopKind
    blocking_col: Optional[int] = Field(
        None, description="Column the entry was stopped just before"
    )

    @model_validator(mode="after")
    def _blocking_col_matches_kind(self) -> "StopRecord":
        if (self.kind == StopKind.END_OF_DIAGRAM) != (self.blocking_col is None):
            raise ValueError("blocking_col is present exactly when the stop is not EndOfDiagram")
        return self


class ExtendedTableau(BaseModel):
    """The composition tableau: the numbered diagram enlarged by repeated entries.

    `grid[row - 1][col - 1]` holds the entry or None. Every entry carries its
    trajectory (first element = its box in the numbered tableau) and the record
    of why it stopped.
    """

    composition: Composition
    grid: List[List[Optional[int]]]
    trajectories: Dict[int, List[BoxCoord]]
    stops: Dict[int, StopRecord]

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def k(self) -> int:
        return self.composition.k

    def cell(self, row: int, col: int) -> Optional[int]:
        if 1 <= row <= self.rows and 1 <= col <= self.k:
            return self.grid[row - 1][col - 1]
        return None

    def column(self, col: int) -> List[int]:
        """Filled cells of a column, top down (columns have no gaps)."""
        out = []
        for row in range(1, self.rows + 1):
            value = self.grid[row - 1][col - 1]
            if value is None:
                break
            out.append(value)
        return out

    def column_lengths(self) -> List[int]:
        return [len(self.column(col)) for col in range(1, self.k + 1)]

    def footprint(self, entry: int) -> Set[Tuple[int, int]]:
        return {box.as_tuple() for box in self.trajectories[entry]}

    def debut(self, entry: int) -> BoxCoord:
        return self.trajectories[entry][0]

    def fin(self, entry: int) -> BoxCoord:
        return self.trajectories[entry][-1]

    def extras(self) -> List[Tuple[int, BoxCoord]]:
        """Repeated cells outside the numbered tableau, sorted by entry then column."""
        out = []
        for entry in sorted(self.trajectories):
            out.extend((entry, box) for box in self.trajectories[entry][1:])
        return out

    def is_repeat(self, row: int, col: int) -> bool:
        entry = self.cell(row, col)
        return entry is not None and self.debut(entry) != BoxCoord(row=row, col=col)

    def with_swapped(self, first: Tuple[int, int], second: Tuple[int, int]) -> "ExtendedTableau":
        """Copy with the contents of two cells exchanged; provenance is left untouched."""
        grid = [list(row) for row in self.grid]
        (r1, c1), (r2, c2) = first, second
        grid[r1 - 1][c1 - 1], grid[r2 - 1][c2 - 1] = grid[r2 - 1][c2 - 1], grid[r1 - 1][c1 - 1]
        return self.model_copy(update={"grid": grid})


class MirroredGrid(BaseModel):
    """Left-right mirror of the composition tableau with entries renamed by precedence rank"""

    rows: List[List[int]] = Field(..., description="Left-justified rows, top down")
    classical: bool = Field(
        ..., description="Rows weakly increase, columns strictly increase, rows have no gaps"
    )
