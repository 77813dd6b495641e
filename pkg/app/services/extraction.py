"""
Line family extraction and Weierstrass section assembly
"""

from typing import Dict, List, Tuple

from loguru import logger

from app.models.extended import ExtendedTableau, StopKind
from app.models.lines import (
    CellLabel,
    Line,
    LineLabel,
    LineSet,
    MatrixPattern,
    Quadruplet,
    VSDiagnostic,
    WeierstrassSection,
)
from app.models.tableau import Composition, Tableau


class ExtractionService:
    def extract_star_lines(self, ext: ExtendedTableau, tableau: Tableau) -> List[Line]:
        """*-lines: one per descent, from the entry to the step directly above its landing cell"""
        lines = []
        for entry, path in ext.trajectories.items():
            for before, after in zip(path, path[1:]):
                if after.row == before.row:
                    continue
                step_row, col = after.row - 1, after.col
                assert step_row <= ext.composition.height(col), (
                    f"step box ({step_row},{col}) of entry {entry} is outside the diagram"
                )
                step = tableau.entry_at(step_row, col)
                lines.append(
                    Line(
                        left_entry=entry,
                        right_entry=step,
                        label=LineLabel.STAR,
                        left_box=path[0],
                        right_box=tableau.box_of(step),
                    )
                )
        return lines

    def extract_one_lines(self, ext: ExtendedTableau, tableau: Tableau) -> List[Line]:
        """1-lines: read off the stop record at each entry's fin"""
        lines = []
        for entry, stop in ext.stops.items():
            if stop.kind == StopKind.END_OF_DIAGRAM:
                continue
            fin = ext.fin(entry)
            target_row = fin.row - 1 if stop.kind == StopKind.BLOCKED_CELL else fin.row
            col = stop.blocking_col
            assert 1 <= target_row <= ext.composition.height(col), (
                f"{stop.kind.value} target ({target_row},{col}) of entry {entry} is outside the diagram"
            )
            target = tableau.entry_at(target_row, col)
            lines.append(
                Line(
                    left_entry=entry,
                    right_entry=target,
                    label=LineLabel.ONE,
                    left_box=ext.debut(entry),
                    right_box=tableau.box_of(target),
                )
            )
        return lines

    def extract_lines(self, ext: ExtendedTableau, tableau: Tableau) -> LineSet:
        lines = self.extract_one_lines(ext, tableau) + self.extract_star_lines(ext, tableau)
        line_set = LineSet(lines=lines)
        logger.debug(
            f"Extracted {len(line_set.ones)} 1-lines and {len(line_set.stars)} *-lines "
            f"for {ext.composition}"
        )
        return line_set

    def build_section(self, lines: LineSet) -> WeierstrassSection:
        """
        Assemble e, V and the VS quadruplets

        Args:
            lines: The full line family

        Returns:
            Coordinate sets; a quadruplet (i,j,k,l) joins 1-line (i,j),
            *-line (j,k) and 1-line (k,l) and contributes the extra (j,l)
        """
        ones = lines.ones
        one_from: Dict[int, List[int]] = {}
        one_into: Dict[int, List[int]] = {}
        for line in ones:
            one_from.setdefault(line.left_entry, []).append(line.right_entry)
            one_into.setdefault(line.right_entry, []).append(line.left_entry)

        quadruplets = []
        for star in lines.stars:
            j, k = star.pair
            for i in one_into.get(j, []):
                for l in one_from.get(k, []):
                    quadruplets.append(Quadruplet(i=i, j=j, k=k, l=l))
        quadruplets.sort(key=lambda q: q.as_tuple())

        return WeierstrassSection(
            e_coords=sorted(line.pair for line in ones),
            v_coords=sorted(line.pair for line in lines.stars),
            quadruplets=quadruplets,
            evs_extras=sorted({q.extra for q in quadruplets}),
        )

    def vs_diagnostic(self, section: WeierstrassSection) -> List[VSDiagnostic]:
        """Which extras enlarge span(e), and which quadruplets share their leading 1-line."""
        e = set(section.e_coords)
        by_head: Dict[Tuple[int, int], List[Tuple[int, int, int, int]]] = {}
        for q in section.quadruplets:
            by_head.setdefault((q.i, q.j), []).append(q.as_tuple())
        out = []
        for q in section.quadruplets:
            siblings = [other for other in by_head[(q.i, q.j)] if other != q.as_tuple()]
            out.append(
                VSDiagnostic(
                    extra=q.extra,
                    quadruplet=q.as_tuple(),
                    enlarges_span=q.extra not in e,
                    shares_leading_line_with=siblings,
                )
            )
        return out

    def matrix_pattern(
        self, section: WeierstrassSection, composition: Composition, include_vs: bool = True
    ) -> MatrixPattern:
        n = composition.n
        cells = [[CellLabel.ZERO] * n for _ in range(n)]
        for i, j in section.e_coords:
            cells[i - 1][j - 1] = CellLabel.ONE
        for i, j in section.v_coords:
            cells[i - 1][j - 1] = CellLabel.STAR
        if include_vs:
            for i, j in section.evs_extras:
                cells[i - 1][j - 1] = CellLabel.ONE_VS
        return MatrixPattern(n=n, blocks=list(composition.parts), cells=cells)


# Singleton instance
extraction_service = ExtractionService()
