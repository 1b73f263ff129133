"""API endpoints for spectral radii, characteristic polynomials and verification"""
from fractions import Fraction
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, HTTPException, Query, status
from pydantic import BaseModel, Field

from app.core.config import settings
from app.core.exceptions import InvalidOrderError, ParseError, SpectraError
from app.core.logging import logger
from app.services.charpoly_service import get_charpoly_service
from app.services.enumeration_service import get_enumeration_service
from app.services.family_service import build_family, enumerate_bicyclic_params, parse_family_spec
from app.services.perron_service import get_perron_service
from app.services.subdigraph_service import find_theta_or_infty_subdigraph
from app.services.verification_service import CLAIMS, run_claims


router = APIRouter(prefix="/spectra", tags=["spectra"])


# Request/Response Models
class BracketResponse(BaseModel):
    """Exact rational bracket, endpoints as strings"""
    lo: str
    hi: str


class RhoResponse(BaseModel):
    """Spectral radius of a family digraph"""
    spec: str
    label: str
    rho: str
    value: float
    bracket: BracketResponse
    source: str
    charpoly: str


class CharpolyResponse(BaseModel):
    """Characteristic polynomial in sparse and dense form"""
    spec: str
    sparse: str
    dense: List[int]


class RankEntryResponse(BaseModel):
    """One row of a bicyclic ranking"""
    rank: int
    label: str
    rho: str
    charpoly: str
    vs_previous: Optional[str] = None


class SubdigraphResponse(BaseModel):
    """θ- or ∞-subdigraph found by the shortest-cycle construction"""
    kind: str
    params: str
    vertex_map: List[int]
    arcs: List[List[int]]
    proper: bool


class VerifyRequest(BaseModel):
    """Request to run one claim (or all) over an order window"""
    claim: str = Field("all", description="Claim id or 'all'")
    n_start: int = Field(4, ge=2, description="First order")
    n_end: int = Field(8, ge=2, le=50, description="Last order")


class VerifyResponse(BaseModel):
    """Verification outcome"""
    passed: bool
    reports: List[Dict[str, Any]]


def _http_error(e: SpectraError) -> HTTPException:
    code = status.HTTP_422_UNPROCESSABLE_ENTITY if isinstance(e, ParseError) else status.HTTP_400_BAD_REQUEST
    return HTTPException(status_code=code, detail=str(e))


# Endpoints
@router.get("/rho", response_model=RhoResponse)
def get_rho(
    spec: str = Query(..., description="Family spec, e.g. theta:0,6,0"),
    precision: int = Query(settings.DEFAULT_PRECISION, ge=1, le=60),
):
    """Certified spectral radius of a family digraph"""
    try:
        params = parse_family_spec(spec)
        d = build_family(params)
        estimate = get_perron_service().rho(d, tol=Fraction(1, 10 ** (precision + 2)))
        return RhoResponse(
            spec=spec,
            label=params.label,
            rho=estimate.format_decimal(precision),
            value=estimate.value,
            bracket=BracketResponse(**estimate.bracket.to_dict()),
            source=estimate.source.value,
            charpoly=get_charpoly_service().characteristic_polynomial(d).to_sparse(),
        )
    except SpectraError as e:
        raise _http_error(e)


@router.get("/charpoly", response_model=CharpolyResponse)
def get_charpoly(spec: str = Query(..., description="Family spec, e.g. dprime:6")):
    """Characteristic polynomial of a family digraph"""
    try:
        polynomial = get_charpoly_service().characteristic_polynomial(build_family(parse_family_spec(spec)))
        return CharpolyResponse(spec=spec, sparse=polynomial.to_sparse(), dense=list(polynomial.coefficients))
    except SpectraError as e:
        raise _http_error(e)


@router.get("/rank-bicyclic", response_model=List[RankEntryResponse])
def get_rank_bicyclic(
    n: int = Query(..., ge=4, le=50),
    direction: str = Query("min", pattern="^(min|max)$"),
    top: Optional[int] = Query(None, ge=1),
):
    """
    Certified ranking of the bicyclic digraphs of order n

    Adjacent rows in the returned head carry the certified relation to the
    previous row ("less", "equal" or "greater").
    """
    try:
        digraphs = [build_family(p) for p in enumerate_bicyclic_params(n)]
        ranking = get_enumeration_service().rank_by_rho(digraphs, top_k=top, descending=direction == "max")
        shown = ranking if top is None else ranking[:top]
        return [
            RankEntryResponse(
                rank=position,
                label=entry.label,
                rho=entry.estimate.format_decimal(settings.DEFAULT_PRECISION),
                charpoly=entry.charpoly.to_sparse(),
                vs_previous=entry.comparison.ordering.value if entry.comparison else None,
            )
            for position, entry in enumerate(shown, start=1)
        ]
    except SpectraError as e:
        raise _http_error(e)


@router.get("/subdigraph", response_model=SubdigraphResponse)
def get_subdigraph(spec: str = Query(..., description="Family spec, e.g. dprime:5")):
    """θ- or ∞-subdigraph of a family digraph"""
    try:
        d = build_family(parse_family_spec(spec))
        witness = find_theta_or_infty_subdigraph(d)
        return SubdigraphResponse(
            kind=witness.kind.value,
            params=witness.params.label,
            vertex_map=list(witness.vertex_map),
            arcs=[list(arc) for arc in witness.arcs],
            proper=witness.is_proper(d),
        )
    except SpectraError as e:
        raise _http_error(e)


@router.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    """
    Run verification claims

    Brute-force claims are clipped to their own order windows, so a wide
    request only runs the family lemmas at large n.
    """
    if request.claim != "all" and request.claim not in CLAIMS:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown claim {request.claim}")
    if request.n_start > request.n_end:
        raise _http_error(InvalidOrderError("n_start must not exceed n_end"))

    try:
        reports = run_claims(request.claim, request.n_start, request.n_end)
    except SpectraError as e:
        raise _http_error(e)
    except Exception as e:
        logger.error(f"Error running verification: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to run verification: {str(e)}"
        )

    return VerifyResponse(
        passed=all(report.passed for report in reports),
        reports=[report.to_dict() for report in reports],
    )
