from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.tableau import BoxCoord


class LineLabel(str, Enum):
    ONE = "1"
    STAR = "*"


class Line(BaseModel):
    """A line joining two boxes of the numbered tableau; (left_entry, right_entry) is its matrix coordinate"""

    model_config = ConfigDict(frozen=True)

    left_entry: int
    right_entry: int
    label: LineLabel
    left_box: BoxCoord
    right_box: BoxCoord

    @model_validator(mode="after")
    def _points_into_nilradical(self) -> "Line":
        if not self.left_entry < self.right_entry:
            raise ValueError(f"line ({self.left_entry},{self.right_entry}) is not left to right")
        if not self.left_box.col < self.right_box.col:
            raise ValueError(f"line ({self.left_entry},{self.right_entry}) stays inside a block")
        slack = 1 if self.label == LineLabel.ONE else 0
        if self.left_box.row > self.right_box.row + slack:
            raise ValueError(
                f"{self.label.value}-line ({self.left_entry},{self.right_entry}) goes down too far"
            )
        return self

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.left_entry, self.right_entry)

    def __str__(self) -> str:
        return f"{self.left_entry} -{self.label.value}-> {self.right_entry}"


class LineSet(BaseModel):
    """The line family, sorted by matrix coordinate"""

    lines: List[Line] = Field(default_factory=list)

    @model_validator(mode="after")
    def _sort(self) -> "LineSet":
        self.lines.sort(key=lambda line: (line.left_entry, line.right_entry, line.label.value))
        return self

    def with_label(self, label: LineLabel) -> List[Line]:
        return [line for line in self.lines if line.label == label]

    @property
    def ones(self) -> List[Line]:
        return self.with_label(LineLabel.ONE)

    @property
    def stars(self) -> List[Line]:
        return self.with_label(LineLabel.STAR)

    def pairs(self, label: Optional[LineLabel] = None) -> List[Tuple[int, int]]:
        return [line.pair for line in self.lines if label is None or line.label == label]

    def right_going(self, entry: int, label: Optional[LineLabel] = None) -> List[Line]:
        return [
            line
            for line in self.lines
            if line.left_entry == entry and (label is None or line.label == label)
        ]

    def left_going(self, entry: int, label: Optional[LineLabel] = None) -> List[Line]:
        return [
            line
            for line in self.lines
            if line.right_entry == entry and (label is None or line.label == label)
        ]

    def by_left(self) -> Dict[int, List[Line]]:
        index: Dict[int, List[Line]] = {}
        for line in self.lines:
            index.setdefault(line.left_entry, []).append(line)
        return index

    def by_right(self) -> Dict[int, List[Line]]:
        index: Dict[int, List[Line]] = {}
        for line in self.lines:
            index.setdefault(line.right_entry, []).append(line)
        return index

    def without(self, pair: Tuple[int, int]) -> "LineSet":
        return LineSet(lines=[line for line in self.lines if line.pair != pair])


class Quadruplet(BaseModel):
    """1-line (i,j), *-line (j,k), 1-line (k,l)"""

    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    k: int
    l: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.i, self.j, self.k, self.l)

    @property
    def extra(self) -> Tuple[int, int]:
        return (self.j, self.l)


class WeierstrassSection(BaseModel):
    e_coords: List[Tuple[int, int]] = Field(..., description="Coordinates of the 1-lines; e is their sum")
    v_coords: List[Tuple[int, int]] = Field(..., description="Coordinates of the *-lines; they span V")
    quadruplets: List[Quadruplet] = Field(default_factory=list)
    evs_extras: List[Tuple[int, int]] = Field(
        default_factory=list, description="(j,l) for each quadruplet; with e they span E_VS"
    )

    @property
    def evs_span(self) -> List[Tuple[int, int]]:
        return sorted(set(self.e_coords) | set(self.evs_extras))


class VSDiagnostic(BaseModel):
    extra: Tuple[int, int]
    quadruplet: Tuple[int, int, int, int]
    enlarges_span: bool = Field(..., description="Extra coordinate is not already among the 1-lines")
    shares_leading_line_with: List[Tuple[int, int, int, int]] = Field(default_factory=list)


class CellLabel(str, Enum):
    ZERO = "0"
    ONE = "1"
    STAR = "*"
    ONE_VS = "1vs"


class MatrixPattern(BaseModel):
    n: int
    blocks: List[int] = Field(..., description="Block sizes = composition parts")
    cells: List[List[CellLabel]]

    def at(self, i: int, j: int) -> CellLabel:
        return self.cells[i - 1][j - 1]

    def nonzero(self) -> List[Tuple[int, int, CellLabel]]:
        return [
            (i, j, label)
            for i, row in enumerate(self.cells, start=1)
            for j, label in enumerate(row, start=1)
            if label != CellLabel.ZERO
        ]
