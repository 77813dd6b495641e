"""Run the construction stages for one composition"""

from typing import List

from pydantic import BaseModel, ConfigDict

from app.models.extended import ExtendedTableau
from app.models.lines import LineSet, WeierstrassSection
from app.models.tableau import Composition, Diagram, NeighborPair, PrecedenceOrder, Tableau
from app.services.extraction import extraction_service
from app.services.propagation import propagation_service
from app.services.tableau import tableau_service


class Analysis(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    composition: Composition
    diagram: Diagram
    tableau: Tableau
    order: PrecedenceOrder
    pairs: List[NeighborPair]
    extended: ExtendedTableau
    lines: LineSet
    section: WeierstrassSection


class AnalysisService:
    def analyze(self, composition: Composition) -> Analysis:
        diagram, tableau = tableau_service.build_tableau(composition)
        order = tableau_service.precedence_order(diagram, tableau)
        extended = propagation_service.propagate(diagram, tableau, order)
        lines = extraction_service.extract_lines(extended, tableau)
        return Analysis(
            composition=composition,
            diagram=diagram,
            tableau=tableau,
            order=order,
            pairs=tableau_service.neighboring_pairs(diagram),
            extended=extended,
            lines=lines,
            section=extraction_service.build_section(lines),
        )


# Singleton instance
analysis_service = AnalysisService()
