"""Checks of the structural properties of the line family"""

from typing import Callable, Dict, List, Optional, Set, Tuple

from loguru import logger

from app.config import settings
from app.exceptions import ViolationError
from app.models.extended import ExtendedTableau
from app.models.lines import Line, LineLabel, LineSet, WeierstrassSection
from app.models.tableau import BoxCoord, Composition, Diagram, NeighborPair, Tableau
from app.models.verification import (
    AuditReport,
    ChainCover,
    CheckResult,
    CheckStatus,
    HopOver,
    VerificationSummary,
)
from app.services.analysis import analysis_service
from app.services.extraction import extraction_service
from app.services.oracle import oracle_service
from app.services.propagation import propagation_service
from app.services.rank import rank_service
from app.services.tableau import tableau_service


class VerificationService:
    # ---- chain covers -------------------------------------------------

    def window(self, diagram: Diagram, pair: NeighborPair) -> List[Tuple[int, int]]:
        return [
            (row, col)
            for col in range(pair.left, pair.right + 1)
            for row in range(1, min(pair.height, diagram.height(col)) + 1)
        ]

    def chain_cover_check(
        self,
        diagram: Diagram,
        tableau: Tableau,
        lines: LineSet,
        limit: Optional[int] = None,
    ) -> List[ChainCover]:
        """
        Find the chain cover of every neighbouring pair window

        Args:
            diagram: Diagram view
            tableau: Numbering of the diagram
            lines: The full line family
            limit: Covers collected per pair before the search stops

        Returns:
            One cover per pair, ordered by right column

        Raises:
            ViolationError: a window has no cover, several covers, or its
                cover does not use exactly the *-line into the bottom of C'
        """
        limit = settings.chain_cover_limit if limit is None else limit
        return [
            self._cover_pair(diagram, tableau, lines, pair, limit)
            for pair in tableau_service.neighboring_pairs(diagram)
        ]

    def _cover_pair(
        self,
        diagram: Diagram,
        tableau: Tableau,
        lines: LineSet,
        pair: NeighborPair,
        limit: int,
    ) -> ChainCover:
        window = self.window(diagram, pair)
        col_of = {tableau.entry_at(r, c): c for r, c in window}
        inside = [line for line in lines.lines if line.left_entry in col_of and line.right_entry in col_of]

        sources = sorted(e for e, c in col_of.items() if c != pair.right)
        targets = sorted(e for e, c in col_of.items() if c != pair.left)
        bit = {entry: 1 << pos for pos, entry in enumerate(targets)}
        successors: Dict[int, List[Line]] = {e: [] for e in sources}
        for line in inside:
            successors[line.left_entry].append(line)

        found: List[List[Line]] = []
        chosen: List[Line] = []
        dead: Set[Tuple[int, int]] = set()

        def search(index: int, used: int) -> None:
            if index == len(sources):
                found.append(list(chosen))
                return
            if (index, used) in dead:
                return
            before = len(found)
            for line in successors[sources[index]]:
                mask = bit[line.right_entry]
                if used & mask:
                    continue
                chosen.append(line)
                search(index + 1, used | mask)
                chosen.pop()
                if len(found) >= limit:
                    return
            if len(found) == before:
                dead.add((index, used))

        if len(sources) == len(targets):
            search(0, 0)

        covers = [self._chains(tableau, pair, matching) for matching in found]
        if len(found) != 1:
            logger.warning(f"Pair {pair.left}-{pair.right}: {len(found)} chain covers")
            raise ViolationError(
                "chain_cover",
                "cover count",
                {"pair": [pair.left, pair.right, pair.height], "covers": len(found)},
                covers=covers,
            )

        stars = [line for line in found[0] if line.label == LineLabel.STAR]
        bottom = tableau.entry_at(pair.height, pair.right)
        if len(stars) != 1 or stars[0].right_entry != bottom:
            raise ViolationError(
                "chain_cover",
                "star line",
                {
                    "pair": [pair.left, pair.right, pair.height],
                    "stars": [list(s.pair) for s in stars],
                    "expected_right_entry": bottom,
                },
                covers=covers,
            )
        return ChainCover(pair=pair, window=window, chains=covers[0], star_line=stars[0].pair)

    def _chains(self, tableau: Tableau, pair: NeighborPair, matching: List[Line]) -> List[List[int]]:
        step = {line.left_entry: line.right_entry for line in matching}
        chains = []
        for row in range(1, pair.height + 1):
            chain = [tableau.entry_at(row, pair.left)]
            while chain[-1] in step:
                chain.append(step[chain[-1]])
            chains.append(chain)
        return chains

    # ---- line family invariants -----------------------------------------

    def check_line_invariants(
        self, diagram: Diagram, tableau: Tableau, lines: LineSet, section: WeierstrassSection
    ) -> None:
        pairs = tableau_service.neighboring_pairs(diagram)
        ones, stars = lines.pairs(LineLabel.ONE), lines.pairs(LineLabel.STAR)
        both = set(ones) & set(stars)
        if both:
            raise ViolationError("line_invariants", "label disjointness", {"pairs": sorted(both)})
        if len(stars) != len(pairs):
            raise ViolationError(
                "line_invariants", "star count", {"stars": len(stars), "pairs": len(pairs)}
            )
        for entry in range(1, diagram.n + 1):
            degrees = {
                "right_one": len(lines.right_going(entry, LineLabel.ONE)),
                "left_one": len(lines.left_going(entry, LineLabel.ONE)),
                "left_star": len(lines.left_going(entry, LineLabel.STAR)),
            }
            over = {name: d for name, d in degrees.items() if d > 1}
            if over:
                raise ViolationError("line_invariants", "degree bound", {"entry": entry, **over})

        nbr_bottoms = {tableau.bottom(pair.right) for pair in pairs}
        star_targets = sorted(j for _, j in stars)
        if star_targets != sorted(nbr_bottoms):
            raise ViolationError(
                "line_invariants",
                "star endpoints",
                {"targets": star_targets, "expected": sorted(nbr_bottoms)},
            )
        for entry, outgoing in lines.by_left().items():
            rows = sorted(
                (line.right_box.col, line.right_box.row)
                for line in outgoing
                if line.label == LineLabel.STAR
            )
            for (_, upper), (_, lower) in zip(rows, rows[1:]):
                if lower != upper + 1:
                    raise ViolationError(
                        "line_invariants", "star descent", {"entry": entry, "rows": [r for _, r in rows]}
                    )
        if len(section.quadruplets) > len(stars):
            raise ViolationError(
                "line_invariants",
                "quadruplet bound",
                {"quadruplets": len(section.quadruplets), "stars": len(stars)},
            )

    # ---- structural audit -----------------------------------------------

    def structural_audit(
        self,
        diagram: Diagram,
        tableau: Tableau,
        ext: ExtendedTableau,
        lines: LineSet,
    ) -> AuditReport:
        """
        Window, column and left-side clauses of the line family

        Args:
            diagram: Diagram view
            tableau: Numbering of the diagram
            ext: Composition tableau
            lines: The line family under audit

        Returns:
            Counts of what was checked and the hop-over lines met on the way

        Raises:
            ViolationError: naming the box and the clause
        """
        pairs = tableau_service.neighboring_pairs(diagram)
        hop_overs = []
        for pair in pairs:
            hop_overs.extend(self._audit_window(diagram, tableau, lines, pair))
        self._audit_columns(diagram, tableau, lines)
        self._audit_left_side(ext, tableau, lines)
        self._audit_staircase_bases(diagram, tableau, lines)

        report = oracle_service.extremal_report(diagram, tableau, lines)
        if not report.consistent:
            raise ViolationError(
                "structural_audit",
                "extremal set",
                {"from_lines": report.right_extremal, "from_oracle": report.witnessed},
            )
        return AuditReport(
            pairs_checked=len(pairs),
            columns_checked=diagram.k,
            lines_checked=len(lines.lines),
            hop_overs=hop_overs,
        )

    def _audit_window(
        self, diagram: Diagram, tableau: Tableau, lines: LineSet, pair: NeighborPair
    ) -> List[HopOver]:
        window = self.window(diagram, pair)
        half_open = {tableau.entry_at(r, c) for r, c in window if c < pair.right}
        interior = {tableau.entry_at(r, c) for r, c in window if pair.left < c < pair.right}
        right_closed = {tableau.entry_at(r, c) for r, c in window if c > pair.left}
        bottom = tableau.entry_at(pair.height, pair.right)
        star_sources = {line.left_entry for line in lines.left_going(bottom, LineLabel.STAR)}

        for entry in sorted(interior):
            incoming = [
                line for line in lines.left_going(entry, LineLabel.ONE) if line.left_entry in half_open
            ]
            if len(incoming) != 1:
                raise ViolationError(
                    "structural_audit",
                    "window left 1-line",
                    {"pair": [pair.left, pair.right], "box": str(tableau.box_of(entry)), "count": len(incoming)},
                )

        hop_overs = []
        for entry in sorted(half_open):
            outgoing = lines.right_going(entry, LineLabel.ONE)
            for line in outgoing:
                if line.right_box.col > pair.right:
                    hop_overs.append(HopOver(pair=pair, line=line.pair))
            if entry in star_sources:
                continue
            into = [line for line in outgoing if line.right_entry in right_closed]
            if len(into) != 1:
                raise ViolationError(
                    "structural_audit",
                    "window right 1-line",
                    {"pair": [pair.left, pair.right], "box": str(tableau.box_of(entry)), "count": len(into)},
                )
        return hop_overs

    def _audit_columns(self, diagram: Diagram, tableau: Tableau, lines: LineSet) -> None:
        """Left-going lines into each column, split by the tallest column to its left."""
        by_right = lines.by_right()

        def fail(clause: str, row: int, col: int, **details) -> None:
            raise ViolationError(
                "structural_audit", clause, {"box": str(BoxCoord(row=row, col=col)), **details}
            )

        for col in range(1, diagram.k + 1):
            t = diagram.height(col)
            s = diagram.max_height_left_of(col)
            has_nbr = diagram.left_neighbor(col) is not None
            reach = 0
            if 1 < col and s < t:
                prefix_diagram, prefix_tableau = tableau_service.build_tableau(
                    diagram.composition.prefix(col - 1)
                )
                reach = oracle_service.oracle_composition_map(prefix_diagram, prefix_tableau)[s]

            for row in range(1, t + 1):
                incoming = by_right.get(tableau.entry_at(row, col), [])
                ones = [line for line in incoming if line.label == LineLabel.ONE]
                stars = [line for line in incoming if line.label == LineLabel.STAR]
                up_going = all(line.left_box.row <= row for line in ones + stars)

                if col == 1:
                    if incoming:
                        fail("first column has left lines", row, col)
                    continue
                if s < t:
                    expected = 1 if row <= s else (1 if row == s + 1 and reach else 0)
                    if len(ones) != expected or stars or not up_going:
                        fail("short left part", row, col, ones=len(ones), stars=len(stars))
                elif row < t:
                    if len(ones) != 1 or stars or not up_going:
                        fail("upper box", row, col, ones=len(ones), stars=len(stars))
                elif has_nbr:
                    slack = row if s == t else row + 1
                    if len(stars) != 1 or stars[0].left_box.row > row:
                        fail("bottom *-line", row, col, stars=len(stars))
                    if len(ones) > 1 or (s > t and len(ones) != 1):
                        fail("bottom extra 1-line", row, col, ones=len(ones))
                    if any(line.left_box.row > slack for line in ones):
                        fail("bottom extra 1-line row", row, col)
                else:
                    if len(ones) != 1 or stars or not up_going:
                        fail("bottom 1-line", row, col, ones=len(ones), stars=len(stars))

    def _audit_left_side(self, ext: ExtendedTableau, tableau: Tableau, lines: LineSet) -> None:
        """Each 1-line comes from the entry beside its right box, or from the one below it when that entry descended."""
        for line in lines.ones:
            row, col = line.right_box.row, line.right_box.col
            expected = ext.cell(row, col - 1)
            if expected is not None and ext.cell(row + 1, col) == expected:
                expected = ext.cell(row + 1, col - 1)
            if expected != line.left_entry:
                raise ViolationError(
                    "structural_audit",
                    "left side of 1-line",
                    {"line": list(line.pair), "expected_left_entry": expected},
                )

    def _audit_staircase_bases(self, diagram: Diagram, tableau: Tableau, lines: LineSet) -> None:
        for staircase in oracle_service.enumerate_staircases(diagram):
            c = staircase.depth
            col = diagram.first_at_least(c, staircase.columns[-1])
            outgoing = [line.right_entry for line in lines.right_going(staircase.base_entry, LineLabel.ONE)]
            if col is None:
                expected = []
            else:
                row = c if diagram.height(col) == c else c + 1
                expected = [tableau.entry_at(row, col)]
            if outgoing != expected:
                raise ViolationError(
                    "structural_audit",
                    "staircase base 1-line",
                    {"base": staircase.base_entry, "found": outgoing, "expected": expected},
                )

    # ---- propagation / oracle equivalence ---------------------------------

    def find_equivalence_mismatch(self, composition: Composition) -> Optional[Dict]:
        for j in range(1, composition.k + 1):
            prefix = composition.prefix(j)
            diagram, tableau = tableau_service.build_tableau(prefix)
            propagated = propagation_service.composition_map(diagram, tableau)
            predicted = oracle_service.oracle_composition_map(diagram, tableau)
            if propagated != predicted:
                return {
                    "prefix": list(prefix.parts),
                    "propagation": propagated,
                    "oracle": predicted,
                }

        diagram, tableau = tableau_service.build_tableau(composition)
        order = tableau_service.precedence_order(diagram, tableau)
        ext = propagation_service.propagate(diagram, tableau, order)
        staircases = oracle_service.enumerate_staircases(diagram)
        for entry in range(1, composition.n + 1):
            traced = set(ext.trajectories[entry])
            predicted_cells = oracle_service.profile_footprint(diagram, tableau, entry, staircases)
            if traced != predicted_cells:
                return {
                    "entry": entry,
                    "trajectory": sorted(b.as_tuple() for b in traced),
                    "footprint": sorted(b.as_tuple() for b in predicted_cells),
                }
        if oracle_service.oracle_tableau(diagram, tableau) != ext.grid:
            return {"grid": "oracle tableau differs from the propagated grid"}
        return None

    def equivalence_check(self, composition: Composition) -> bool:
        mismatch = self.find_equivalence_mismatch(composition)
        if mismatch is not None:
            logger.warning(f"Equivalence mismatch for {composition}: {mismatch}")
        return mismatch is None

    # ---- propagation shape ------------------------------------------------

    def check_propagation_shape(
        self, diagram: Diagram, tableau: Tableau, ext: ExtendedTableau
    ) -> None:
        for box in diagram.boxes():
            if ext.cell(box.row, box.col) != tableau.entry_at(box.row, box.col):
                raise ViolationError("propagation_shape", "restriction", {"box": str(box)})
        for entry, path in ext.trajectories.items():
            for before, after in zip(path, path[1:]):
                if after.col != before.col + 1 or after.row - before.row not in (0, 1):
                    raise ViolationError(
                        "propagation_shape", "trajectory step", {"entry": entry, "step": [str(before), str(after)]}
                    )
                if after.row == before.row + 1 and (
                    after.row != diagram.height(after.col) + 1
                    or diagram.left_neighbor(after.col) is None
                ):
                    raise ViolationError(
                        "propagation_shape", "descent target", {"entry": entry, "cell": str(after)}
                    )
            cols = sorted({box.col for box in path})
            if cols != list(range(cols[0], cols[-1] + 1)):
                raise ViolationError("propagation_shape", "interval footprint", {"entry": entry, "cols": cols})
        lengths = ext.column_lengths()
        if any(a > b for a, b in zip(lengths, lengths[1:])):
            raise ViolationError("propagation_shape", "column lengths", {"lengths": lengths})

    # ---- suite ----------------------------------------------------------

    def run_suite(
        self,
        composition: Composition,
        rank: bool = True,
        trials: Optional[int] = None,
        prime: Optional[int] = None,
        seed: Optional[int] = None,
        lines: Optional[LineSet] = None,
        extended: Optional[ExtendedTableau] = None,
    ) -> VerificationSummary:
        """
        Run every check in a fixed order

        Args:
            composition: Composition under test
            rank: Include the rank certificate
            trials: Rank samples
            prime: Rank modulus
            seed: Rank seed
            lines: Replacement line family, for negative controls
            extended: Replacement composition tableau, for negative controls

        Returns:
            One CheckResult per check
        """
        analysis = analysis_service.analyze(composition)
        diagram, tableau, order = analysis.diagram, analysis.tableau, analysis.order
        ext = extended if extended is not None else analysis.extended
        line_set = lines if lines is not None else analysis.lines
        section = (
            extraction_service.build_section(line_set) if lines is not None else analysis.section
        )

        def semistandard() -> Dict:
            if not propagation_service.is_semistandard(ext, order):
                raise ViolationError("semistandard", "row or column order")
            mirror = propagation_service.mirror_semistandard(ext, order)
            if not mirror.classical:
                raise ViolationError("semistandard", "mirror image not classical")
            return {}

        def shape() -> Dict:
            self.check_propagation_shape(diagram, tableau, ext)
            return {}

        def line_invariants() -> Dict:
            self.check_line_invariants(diagram, tableau, line_set, section)
            return {
                "ones": len(line_set.ones),
                "stars": len(line_set.stars),
                "quadruplets": len(section.quadruplets),
            }

        def chain_covers() -> Dict:
            covers = self.chain_cover_check(diagram, tableau, line_set)
            return {"pairs": len(covers)}

        def audit() -> Dict:
            report = self.structural_audit(diagram, tableau, ext, line_set)
            return {"hop_overs": [list(h.line) for h in report.hop_overs]}

        def composition_map() -> Dict:
            values = propagation_service.composition_map(diagram, tableau)
            nonzero = [v for v in values if v]
            if len(set(nonzero)) != len(nonzero):
                raise ViolationError("composition_map", "repeated value", {"map": values})
            return {"map": values}

        def equivalence() -> Dict:
            mismatch = self.find_equivalence_mismatch(composition)
            if mismatch is not None:
                raise ViolationError("equivalence", "oracle mismatch", mismatch)
            return {}

        checks: List[Tuple[str, Callable[[], Dict]]] = [
            ("semistandard", semistandard),
            ("propagation_shape", shape),
            ("line_invariants", line_invariants),
            ("chain_covers", chain_covers),
            ("structural_audit", audit),
            ("composition_map", composition_map),
            ("equivalence", equivalence),
        ]
        results = [self._run_check(name, fn) for name, fn in checks]
        results.append(self._rank_result(composition, section, rank, trials, prime, seed))

        summary = VerificationSummary(composition=list(composition.parts), checks=results)
        logger.debug(
            f"Suite for {composition}: "
            f"{'pass' if summary.passed else [c.name for c in summary.failed]}"
        )
        return summary

    def _run_check(self, name: str, fn: Callable[[], Dict]) -> CheckResult:
        try:
            details = fn()
        except ViolationError as e:
            logger.warning(f"{name} failed: {e.clause} {e.details}")
            return CheckResult(name=name, status=CheckStatus.FAIL, clause=e.clause, details=e.details)
        except AssertionError as e:
            return CheckResult(
                name=name, status=CheckStatus.FAIL, clause="internal assertion", details={"error": str(e)}
            )
        return CheckResult(name=name, status=CheckStatus.PASS, details=details)

    def _rank_result(
        self,
        composition: Composition,
        section: WeierstrassSection,
        enabled: bool,
        trials: Optional[int],
        prime: Optional[int],
        seed: Optional[int],
    ) -> CheckResult:
        if not enabled:
            return CheckResult(name="rank", status=CheckStatus.SKIPPED)
        if not rank_service.within_cap(composition):
            dim_m, dim_p = rank_service.dimensions(composition)
            logger.info(f"Skipping rank for {composition}: {dim_p} x {dim_m} matrix over the cap")
            return CheckResult(
                name="rank",
                status=CheckStatus.SKIPPED,
                clause="matrix too large",
                details={"dim_m": dim_m, "dim_p": dim_p, "max_cells": settings.rank_max_cells},
            )
        certificate = rank_service.rank_check(composition, section, trials, prime, seed)
        details = {
            "prime": certificate.prime,
            "seed": certificate.seed,
            "dim_m": certificate.dim_m,
            "ranks": certificate.ranks,
            "expected_defect": certificate.expected_defect,
        }
        if certificate.passed:
            return CheckResult(name="rank", status=CheckStatus.PASS, details=details)
        return CheckResult(
            name="rank", status=CheckStatus.INVESTIGATE, clause="defect mismatch", details=details
        )


# Singleton instance
verification_service = VerificationService()
