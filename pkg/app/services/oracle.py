"""Staircase description of the composition tableau, computed without propagation"""

from typing import Dict, List, Optional, Set, Tuple

from loguru import logger

from app.exceptions import ReplacementError
from app.models.lines import LineLabel, LineSet
from app.models.oracle import ExtremalReport, ExtremalWitness, Staircase, WitnessKind
from app.models.tableau import BoxCoord, Diagram, Tableau
from app.services.analysis import analysis_service
from app.services.tableau import tableau_service


class OracleService:
    """Service for column staircases, extremal boxes and profile footprints"""

    def enumerate_staircases(self, diagram: Diagram) -> List[Staircase]:
        """
        Find every maximal column staircase

        A column with a left neighbour starts a staircase unless the rightmost
        column of height >= h-1 to its left has height exactly h-1 and a left
        neighbour itself. From a start the chain grows while the first column
        of height >= depth to the right has height depth+1 and a left neighbour.

        Args:
            diagram: Diagram view

        Returns:
            Staircases ordered by first column
        """
        _, tableau = tableau_service.build_tableau(diagram.composition)
        staircases = []
        for start in range(1, diagram.k + 1):
            if diagram.left_neighbor(start) is None or self._extends_left(diagram, start):
                continue
            u = diagram.height(start)
            columns = [start]
            depth = u
            while True:
                nxt = diagram.first_at_least(depth, columns[-1])
                if (
                    nxt is None
                    or diagram.height(nxt) != depth + 1
                    or diagram.left_neighbor(nxt) is None
                ):
                    break
                columns.append(nxt)
                depth += 1
            base_col = diagram.rightmost_at_least(u, before=start)
            assert base_col is not None, f"column {start} has a left neighbour but no base column"
            staircases.append(
                Staircase(
                    height=u,
                    depth=depth,
                    columns=columns,
                    base=BoxCoord(row=u, col=base_col),
                    base_entry=tableau.entry_at(u, base_col),
                    profile=[base_col] + columns,
                    right_extremal=diagram.first_at_least(depth, columns[-1]) is None,
                )
            )
        return staircases

    def _extends_left(self, diagram: Diagram, col: int) -> bool:
        h = diagram.height(col)
        if h == 1:
            return False
        prev = diagram.rightmost_at_least(h - 1, before=col)
        return (
            prev is not None
            and diagram.height(prev) == h - 1
            and diagram.left_neighbor(prev) is not None
        )

    def right_extremal_by_depth(self, staircases: List[Staircase]) -> Dict[int, Staircase]:
        by_depth: Dict[int, Staircase] = {}
        for staircase in staircases:
            if not staircase.right_extremal:
                continue
            assert staircase.depth not in by_depth, (
                f"two right extremal staircases of depth {staircase.depth}"
            )
            by_depth[staircase.depth] = staircase
        return by_depth

    def oracle_composition_map(self, diagram: Diagram, tableau: Tableau) -> List[int]:
        by_depth = self.right_extremal_by_depth(self.enumerate_staircases(diagram))
        s = diagram.max_height
        values = []
        for t in range(1, s + 2):
            staircase = by_depth.get(t - 1)
            if staircase is not None:
                values.append(staircase.base_entry)
            elif t <= s:
                values.append(tableau.entry_at(t, diagram.rightmost_at_least(t)))
            else:
                values.append(0)
        return values

    def oracle_tableau(self, diagram: Diagram, tableau: Tableau) -> List[List[Optional[int]]]:
        """Build the composition tableau column by column from the maps of the truncations."""
        rows = diagram.max_height + 1
        grid: List[List[Optional[int]]] = [[None] * diagram.k for _ in range(rows)]
        for m in range(1, diagram.k + 1):
            prefix_diagram, prefix_tableau = tableau_service.build_tableau(
                diagram.composition.prefix(m)
            )
            for t, value in enumerate(
                self.oracle_composition_map(prefix_diagram, prefix_tableau), start=1
            ):
                if value:
                    grid[t - 1][m - 1] = value
        return grid

    def profile_footprint(
        self,
        diagram: Diagram,
        tableau: Tableau,
        entry: int,
        staircases: Optional[List[Staircase]] = None,
    ) -> Set[BoxCoord]:
        """
        Predict the cells an entry occupies in the composition tableau

        Args:
            diagram: Diagram view
            tableau: Numbering of the diagram
            entry: Entry to locate
            staircases: Precomputed staircases of the diagram

        Returns:
            The cell set; a staircase base climbs the profile of its staircase,
            any other entry runs flat along its row
        """
        box = tableau.box_of(entry)
        u, j0 = box.row, box.col
        if staircases is None:
            staircases = self.enumerate_staircases(diagram)
        staircase = next((s for s in staircases if s.base == box), None)
        cells: Set[Tuple[int, int]] = set()
        if staircase is None:
            stop = next(
                (
                    j
                    for j in range(j0 + 1, diagram.k + 1)
                    if diagram.height(j) >= u
                    or (diagram.height(j) == u - 1 and diagram.left_neighbor(j) is not None)
                ),
                diagram.k + 1,
            )
            cells = {(u, col) for col in range(j0, stop)}
        else:
            steps = staircase.columns
            removal = diagram.first_at_least(staircase.depth, steps[-1]) or diagram.k + 1
            cells.update((u, col) for col in range(j0, steps[0]))
            for index, row in enumerate(range(u, staircase.depth + 1)):
                end = steps[index + 1] if index + 1 < len(steps) else removal
                cells.update((row + 1, col) for col in range(steps[index], end))
        return {BoxCoord(row=r, col=c) for r, c in cells}

    def extremal_report(
        self, diagram: Diagram, tableau: Tableau, lines: LineSet
    ) -> ExtremalReport:
        by_right_one = {line.left_entry for line in lines.ones}
        right_extremal = [e for e in range(1, diagram.n + 1) if e not in by_right_one]

        by_depth = self.right_extremal_by_depth(self.enumerate_staircases(diagram))
        witnesses = []
        for t in range(1, diagram.max_height + 2):
            staircase = by_depth.get(t - 1)
            if staircase is not None:
                witnesses.append(
                    ExtremalWitness(
                        row=t,
                        entry=staircase.base_entry,
                        kind=WitnessKind.STAIRCASE_BASE,
                        box=staircase.base,
                        staircase=staircase,
                    )
                )
            elif t <= diagram.max_height:
                col = diagram.rightmost_at_least(t)
                witnesses.append(
                    ExtremalWitness(
                        row=t,
                        entry=tableau.entry_at(t, col),
                        kind=WitnessKind.LOWER_PART,
                        box=BoxCoord(row=t, col=col),
                    )
                )
        return ExtremalReport(right_extremal=right_extremal, witnesses=witnesses)

    def replacement_chain(
        self, diagram: Diagram, col: int, lines: Optional[LineSet] = None
    ) -> List[BoxCoord]:
        """Follow 1-lines out of the bottom box of a right extremal column and *-lines back, until an extremal box."""
        height = diagram.height(col)
        tallest_right = diagram.max_height_right_of(col)
        if height != tallest_right + 1:
            raise ReplacementError(
                f"column {col} has height {height}, expected {tallest_right + 1}"
            )
        _, tableau = tableau_service.build_tableau(diagram.composition)
        if lines is None:
            lines = analysis_service.analyze(diagram.composition).lines

        chain = [BoxCoord(row=height, col=col)]
        while True:
            entry = tableau.entry_at(chain[-1].row, chain[-1].col)
            ones = lines.right_going(entry, LineLabel.ONE)
            if not ones:
                break
            target = ones[0].right_entry
            stars = lines.left_going(target, LineLabel.STAR)
            if not stars:
                raise ReplacementError(f"no *-line enters b({target}) from the left")
            nxt = tableau.box_of(stars[0].left_entry)
            if nxt in chain:
                raise ReplacementError(f"replacement revisits {nxt}")
            chain.append(nxt)
        logger.debug(f"Replacement chain from column {col}: {[str(b) for b in chain]}")
        return chain


# Singleton instance
oracle_service = OracleService()
