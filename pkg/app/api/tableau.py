"""Tableau and composition tableau API"""

from fastapi import APIRouter, Depends, HTTPException

from app.exceptions import CompositionError
from app.models.tableau import Composition
from app.services.analysis import Analysis, analysis_service
from app.services.propagation import propagation_service

router = APIRouter()


def get_analysis(composition: str) -> Analysis:
    """Parse the path composition and run the construction"""
    try:
        return analysis_service.analyze(Composition.parse(composition))
    except CompositionError as e:
        raise HTTPException(status_code=400, detail=f"Malformed composition: {str(e)}")


@router.get("/{composition}")
def get_tableau(analysis: Analysis = Depends(get_analysis)):
    """
    Numbered tableau, precedence order, composition tableau and composition map
    """
    try:
        ext = analysis.extended
        return {
            "composition": list(analysis.composition.parts),
            "n": analysis.composition.n,
            "tableau": analysis.tableau.columns,
            "precedence": analysis.order.sequence,
            "extended": ext.grid,
            "extras": [
                {"entry": entry, "row": box.row, "col": box.col} for entry, box in ext.extras()
            ],
            "stops": {
                entry: {"kind": stop.kind.value, "blocking_col": stop.blocking_col}
                for entry, stop in sorted(ext.stops.items())
            },
            "pairs": [pair.model_dump() for pair in analysis.pairs],
            "composition_map": propagation_service.composition_map(
                analysis.diagram, analysis.tableau
            ),
        }
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to build tableau: {str(e)}")
