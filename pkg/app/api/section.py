"""Line family and Weierstrass section API"""

from fastapi import APIRouter, Depends, HTTPException, Query

from app.api.tableau import get_analysis
from app.services.analysis import Analysis
from app.services.extraction import extraction_service
from app.services.report import report_service

router = APIRouter()


@router.get("/{composition}")
def get_section(
    analysis: Analysis = Depends(get_analysis),
    include_vs: bool = Query(True, description="Mark the e_VS extras in the matrix pattern"),
):
    """Lines, e, V, VS quadruplets and the matrix pattern"""
    try:
        section = analysis.section
        pattern = extraction_service.matrix_pattern(section, analysis.composition, include_vs)
        return {
            "composition": list(analysis.composition.parts),
            "lines": [line.model_dump(mode="json") for line in analysis.lines.lines],
            "section": section.model_dump(mode="json"),
            "vs_diagnostic": [
                d.model_dump(mode="json") for d in extraction_service.vs_diagnostic(section)
            ],
            "matrix": [
                {"i": i, "j": j, "label": label.value} for i, j, label in pattern.nonzero()
            ],
            "blocks": pattern.blocks,
        }
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to build section: {str(e)}")


@router.get("/{composition}/report")
def get_report(analysis: Analysis = Depends(get_analysis)):
    """Versioned JSON report"""
    try:
        return report_service.build_report(analysis).model_dump(
            mode="json", by_alias=True, exclude_none=True
        )
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to build report: {str(e)}")
