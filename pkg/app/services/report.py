"""JSON report assembly, schema validation and round trip"""

import json
import time
from typing import Any, Dict, Optional

from jsonschema import Draft202012Validator
from loguru import logger

from app.models.lines import Line, LineSet, Quadruplet, WeierstrassSection
from app.models.schemas import Report, ReportCell, ReportLine, ReportSection
from app.models.tableau import BoxCoord
from app.models.verification import VerificationSummary
from app.services.analysis import Analysis
from app.services.propagation import propagation_service


class ReportService:
    def __init__(self):
        self.validator = Draft202012Validator(Report.model_json_schema(by_alias=True))

    def build_report(
        self,
        analysis: Analysis,
        verification: Optional[VerificationSummary] = None,
        timing: Optional[Dict[str, float]] = None,
    ) -> Report:
        ext = analysis.extended
        cells = [
            ReportCell(row=row, col=col, entry=entry, repeat=ext.is_repeat(row, col))
            for row in range(1, ext.rows + 1)
            for col in range(1, ext.k + 1)
            if (entry := ext.cell(row, col)) is not None
        ]
        lines = [
            ReportLine(
                i=line.left_entry,
                j=line.right_entry,
                label=line.label,
                left=line.left_box.as_tuple(),
                right=line.right_box.as_tuple(),
            )
            for line in analysis.lines.lines
        ]
        section = analysis.section
        return Report(
            composition=list(analysis.composition.parts),
            n=analysis.composition.n,
            tableau=analysis.tableau.columns,
            extended=cells,
            composition_map=propagation_service.composition_map(analysis.diagram, analysis.tableau),
            lines=lines,
            section=ReportSection(
                e=section.e_coords,
                v=section.v_coords,
                quadruplets=[q.as_tuple() for q in section.quadruplets],
                evs_extras=section.evs_extras,
            ),
            verification=verification,
            timing=timing,
        )

    def dump(self, report: Report) -> str:
        return report.model_dump_json(by_alias=True, exclude_none=True, indent=2)

    def validate_report(self, payload: Dict[str, Any]) -> None:
        """Raise jsonschema.ValidationError if the payload does not match the report schema."""
        self.validator.validate(payload)

    def parse_report(self, text: str) -> Report:
        payload = json.loads(text)
        self.validate_report(payload)
        return Report.model_validate(payload)

    def to_line_set(self, report: Report) -> LineSet:
        return LineSet(
            lines=[
                Line(
                    left_entry=line.i,
                    right_entry=line.j,
                    label=line.label,
                    left_box=BoxCoord(row=line.left[0], col=line.left[1]),
                    right_box=BoxCoord(row=line.right[0], col=line.right[1]),
                )
                for line in report.lines
            ]
        )

    def to_section(self, report: Report) -> WeierstrassSection:
        return WeierstrassSection(
            e_coords=report.section.e,
            v_coords=report.section.v,
            quadruplets=[Quadruplet(i=i, j=j, k=k, l=l) for i, j, k, l in report.section.quadruplets],
            evs_extras=report.section.evs_extras,
        )


class Stopwatch:
    """Collects named phase durations for the optional timing block"""

    def __init__(self):
        self.phases: Dict[str, float] = {}
        self._start = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.phases[name] = round(now - self._start, 6)
        logger.debug(f"{name}: {self.phases[name]:.6f}s")
        self._start = now


# Singleton instance
report_service = ReportService()
