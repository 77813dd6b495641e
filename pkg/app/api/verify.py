"""Verification and staircase oracle API"""

from fastapi import APIRouter, Depends, HTTPException

from app.api.tableau import get_analysis
from app.exceptions import CompositionError, RankPreconditionError
from app.models.schemas import VerifyRequest
from app.models.tableau import Composition
from app.services.analysis import Analysis
from app.services.oracle import oracle_service
from app.services.verification import verification_service

router = APIRouter()


@router.post("")
def verify_composition(request: VerifyRequest):
    """Run the verification suite on one composition"""
    try:
        composition = Composition.parse(request.composition)
        summary = verification_service.run_suite(
            composition,
            rank=request.rank,
            trials=request.trials,
            prime=request.prime,
            seed=request.seed,
        )
        return {"passed": summary.passed, **summary.model_dump(mode="json")}
    except (CompositionError, RankPreconditionError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Verification failed: {str(e)}")


@router.get("/{composition}/oracle")
def get_oracle(analysis: Analysis = Depends(get_analysis)):
    """Staircases, oracle composition map and extremal witnesses"""
    try:
        diagram, tableau = analysis.diagram, analysis.tableau
        report = oracle_service.extremal_report(diagram, tableau, analysis.lines)
        return {
            "staircases": [
                s.model_dump(mode="json") for s in oracle_service.enumerate_staircases(diagram)
            ],
            "composition_map": oracle_service.oracle_composition_map(diagram, tableau),
            "extremal": report.model_dump(mode="json"),
            "consistent": report.consistent,
        }
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to run oracle: {str(e)}")
