"""Compositions, diagrams and the numbered tableau"""

import re
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from app.config import settings
from app.exceptions import CompositionError

_SEPARATORS = re.compile(r"[,\s]+")


class Composition(BaseModel):
    """Ordered column heights c_1..c_k of the diagram"""

    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = Field(..., description="Column heights, left to right")

    @field_validator("parts")
    @classmethod
    def _check_parts(cls, parts: Tuple[int, ...]) -> Tuple[int, ...]:
        if not parts:
            raise ValueError("composition needs at least one part")
        bad = [p for p in parts if p < 1]
        if bad:
            raise ValueError(f"parts must be positive, got {bad}")
        if sum(parts) > settings.max_n:
            raise ValueError(f"n = {sum(parts)} exceeds the cap {settings.max_n}")
        return parts

    @classmethod
    def of(cls, *parts: int) -> "Composition":
        try:
            return cls(parts=tuple(parts))
        except ValidationError as e:
            raise CompositionError(e.errors()[0]["msg"]) from e

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse a comma- or space-separated list such as "1,2,4,3" or "2 1 1"."""
        tokens = [tok for tok in _SEPARATORS.split(text.strip()) if tok]
        if not tokens:
            raise CompositionError("empty composition")
        try:
            values = [int(tok) for tok in tokens]
        except ValueError as e:
            raise CompositionError(f"not a list of integers: {text!r}") from e
        return cls.of(*values)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def height(self, col: int) -> int:
        return self.parts[col - 1]

    def prefix(self, j: int) -> "Composition":
        """Truncation to the first j columns."""
        return Composition.of(*self.parts[:j])

    def with_virtual_column(self, height: int) -> "Composition":
        """Append a probe column; skips the size cap since the probe is never numbered for output."""
        return Composition.model_construct(parts=self.parts + (height,))

    def label(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return f"({self.label()})"


def compositions_of(m: int) -> Iterator[Composition]:
    """All 2^(m-1) compositions of m; bit i of the mask cuts after position i+1."""
    if m < 1:
        return
    for mask in range(1 << (m - 1)):
        parts = []
        run = 1
        for i in range(m - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition.of(*parts)


class BoxCoord(BaseModel):
    model_config = ConfigDict(frozen=True)

    row: int = Field(..., ge=1, description="1 = top row")
    col: int = Field(..., ge=1, description="1 = leftmost column")

    def as_tuple(self) -> Tuple[int, int]:
        return (self.row, self.col)

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


class NeighborPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    left: int = Field(..., description="Column C")
    right: int = Field(..., description="Column C', the right neighbour")
    height: int


class Diagram:
    """Arithmetic view over a composition: box membership, heights, left neighbours."""

    __slots__ = ("composition", "heights", "_left_neighbor")

    def __init__(self, composition: Composition):
        self.composition = composition
        self.heights = composition.parts
        last_seen: Dict[int, int] = {}
        neighbors: List[Optional[int]] = []
        for col, h in enumerate(self.heights, start=1):
            neighbors.append(last_seen.get(h))
            last_seen[h] = col
        self._left_neighbor = tuple(neighbors)

    @property
    def k(self) -> int:
        return len(self.heights)

    @property
    def n(self) -> int:
        return self.composition.n

    @property
    def max_height(self) -> int:
        return max(self.heights)

    @property
    def height_set(self) -> frozenset:
        return frozenset(self.heights)

    def height(self, col: int) -> int:
        return self.heights[col - 1]

    def contains(self, row: int, col: int) -> bool:
        return 1 <= col <= self.k and 1 <= row <= self.heights[col - 1]

    def left_neighbor(self, col: int) -> Optional[int]:
        return self._left_neighbor[col - 1]

    def max_height_left_of(self, col: int) -> int:
        return max(self.heights[: col - 1], default=0)

    def max_height_right_of(self, col: int) -> int:
        return max(self.heights[col:], default=0)

    def rightmost_at_least(self, height: int, before: Optional[int] = None) -> Optional[int]:
        """Rightmost column of height >= height, strictly left of `before` when given."""
        stop = self.k if before is None else before - 1
        for col in range(stop, 0, -1):
            if self.heights[col - 1] >= height:
                return col
        return None

    def first_at_least(self, height: int, after: int) -> Optional[int]:
        """First column strictly right of `after` with height >= height."""
        for col in range(after + 1, self.k + 1):
            if self.heights[col - 1] >= height:
                return col
        return None

    def boxes(self) -> Iterator[BoxCoord]:
        for col, h in enumerate(self.heights, start=1):
            for row in range(1, h + 1):
                yield BoxCoord(row=row, col=col)


class Tableau(BaseModel):
    """Column-wise numbering 1..n of the diagram"""

    composition: Composition
    columns: List[List[int]] = Field(..., description="Entries of each column, top to bottom")

    def entry_at(self, row: int, col: int) -> int:
        if not (1 <= col <= len(self.columns) and 1 <= row <= len(self.columns[col - 1])):
            raise KeyError(f"({row},{col}) is not a box of the diagram")
        return self.columns[col - 1][row - 1]

    def box_of(self, entry: int) -> BoxCoord:
        col = 1
        for column in self.columns:
            if entry <= column[-1]:
                return BoxCoord(row=entry - column[0] + 1, col=col)
            col += 1
        raise KeyError(f"entry {entry} is not in the tableau")

    def bottom(self, col: int) -> int:
        return self.columns[col - 1][-1]

    @property
    def n(self) -> int:
        return self.composition.n


class PrecedenceOrder(BaseModel):
    """The order: down each column, columns taken right to left"""

    sequence: List[int] = Field(..., description="Entries in increasing precedence")
    rank: Dict[int, int] = Field(..., description="Entry -> position in sequence, 1-based")

    def precedes(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]
