"""Insertion algorithm producing the composition tableau"""

from typing import Dict, List, Optional

from loguru import logger

from app.models.extended import ExtendedTableau, MirroredGrid, StopKind, StopRecord
from app.models.tableau import BoxCoord, Diagram, PrecedenceOrder, Tableau
from app.services.tableau import tableau_service


class PropagationService:
    """Service for pushing entries rightwards through the diagram"""

    def propagate(
        self, diagram: Diagram, tableau: Tableau, order: PrecedenceOrder
    ) -> ExtendedTableau:
        """
        Run the insertion rules on every entry in increasing precedence

        Each entry is pushed as far right as the rules allow before the next
        one starts. From cell (v, j) with next column height h:
        h < v moves along the row if the cell is free, else BlockedCell;
        h == v descends one row when the next column has a left neighbour
        and the cell below its bottom box is free, else NoDescent;
        h > v is TallColumn; no next column is EndOfDiagram.

        Args:
            diagram: Diagram view
            tableau: Numbering of the diagram
            order: Precedence order of the numbering

        Returns:
            Filled grid with each entry's trajectory and stop record
        """
        k = diagram.k
        heights = diagram.heights
        rows = diagram.max_height + 1
        grid: List[List[Optional[int]]] = [[None] * k for _ in range(rows)]
        for col, column in enumerate(tableau.columns, start=1):
            for row, entry in enumerate(column, start=1):
                grid[row - 1][col - 1] = entry

        trajectories: Dict[int, List[BoxCoord]] = {}
        stops: Dict[int, StopRecord] = {}

        def place(entry: int, row: int, col: int) -> None:
            assert row <= rows, f"entry {entry} pushed below row {rows}"
            assert grid[row - 1][col - 1] is None, (
                f"cell ({row},{col}) already holds {grid[row - 1][col - 1]}, cannot place {entry}"
            )
            grid[row - 1][col - 1] = entry
            trajectories[entry].append(BoxCoord(row=row, col=col))

        for entry in order.sequence:
            start = tableau.box_of(entry)
            trajectories[entry] = [start]
            v, j = start.row, start.col
            while True:
                if j == k:
                    stops[entry] = StopRecord(kind=StopKind.END_OF_DIAGRAM)
                    break
                nxt = j + 1
                h = heights[nxt - 1]
                if h < v:
                    if grid[v - 1][nxt - 1] is None:
                        place(entry, v, nxt)
                        j = nxt
                        continue
                    stops[entry] = StopRecord(kind=StopKind.BLOCKED_CELL, blocking_col=nxt)
                    break
                if h == v:
                    if diagram.left_neighbor(nxt) is not None and grid[v][nxt - 1] is None:
                        place(entry, v + 1, nxt)
                        v, j = v + 1, nxt
                        continue
                    stops[entry] = StopRecord(kind=StopKind.NO_DESCENT, blocking_col=nxt)
                    break
                stops[entry] = StopRecord(kind=StopKind.TALL_COLUMN, blocking_col=nxt)
                break

        logger.debug(
            f"Propagated {diagram.composition}: "
            f"{sum(len(t) - 1 for t in trajectories.values())} repeated cells"
        )
        return ExtendedTableau(
            composition=diagram.composition,
            grid=grid,
            trajectories=trajectories,
            stops=stops,
        )

    def is_semistandard(self, ext: ExtendedTableau, order: PrecedenceOrder) -> bool:
        rank = order.rank
        for col in range(1, ext.k + 1):
            column = [ext.cell(row, col) for row in range(1, ext.rows + 1)]
            filled = ext.column(col)
            if any(value is not None for value in column[len(filled):]):
                return False
            for upper, lower in zip(filled, filled[1:]):
                if not rank[upper] < rank[lower]:
                    return False
        for row in range(1, ext.rows + 1):
            filled = [v for v in (ext.cell(row, col) for col in range(1, ext.k + 1)) if v is not None]
            for left, right in zip(filled, filled[1:]):
                if rank[left] < rank[right]:
                    return False
        return True

    def mirror_semistandard(
        self, ext: ExtendedTableau, order: Optional[PrecedenceOrder] = None
    ) -> MirroredGrid:
        """Reverse the columns, rename entries by precedence rank and check the classical convention."""
        if order is None:
            diagram, tableau = tableau_service.build_tableau(ext.composition)
            order = tableau_service.precedence_order(diagram, tableau)
        mirrored = [
            [None if v is None else order.rank[v] for v in reversed(row)] for row in ext.grid
        ]
        classical = True
        rows: List[List[int]] = []
        for row in mirrored:
            filled = [v for v in row if v is not None]
            if any(v is None for v in row[: len(filled)]):
                classical = False
            if any(a > b for a, b in zip(filled, filled[1:])):
                classical = False
            if filled:
                rows.append(filled)
        for col in range(ext.k):
            column = [row[col] for row in mirrored if row[col] is not None]
            if any(a >= b for a, b in zip(column, column[1:])):
                classical = False
        return MirroredGrid(rows=rows, classical=classical)

    def composition_map(
        self, diagram: Diagram, tableau: Tableau, virtual_height: Optional[int] = None
    ) -> List[int]:
        """
        Probe with a tall virtual column appended on the right

        Args:
            diagram: Diagram view
            tableau: Numbering of the diagram
            virtual_height: Height of the probe column, default maxHeight + 2

        Returns:
            r_1..r_{s+1}, 0 where no entry reaches that row
        """
        s = diagram.max_height
        height = virtual_height if virtual_height is not None else s + 2
        augmented = diagram.composition.with_virtual_column(height)
        aug_diagram, aug_tableau = tableau_service.build_tableau(augmented)
        aug_order = tableau_service.precedence_order(aug_diagram, aug_tableau)
        ext = self.propagate(aug_diagram, aug_tableau, aug_order)

        probe = diagram.k + 1
        values = [0] * (s + 1)
        for entry in range(1, diagram.n + 1):
            stop = ext.stops[entry]
            if stop.kind == StopKind.TALL_COLUMN and stop.blocking_col == probe:
                row = ext.fin(entry).row
                assert values[row - 1] == 0, f"two entries stop at probe row {row}"
                values[row - 1] = entry
        return values


# Singleton instance
propagation_service = PropagationService()
