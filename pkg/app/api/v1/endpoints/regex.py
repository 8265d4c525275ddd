from fastapi import APIRouter, HTTPException

from app.core.logger import get_logger
from app.models.regex import CostFunction, Op, OperatorSet, cost, operators_used, size
from app.schemas.api import (
    CostRequest,
    CostResponse,
    MatchRequest,
    MatchResponse,
    ParseResponse,
    RegexRequest,
)
from app.services.matcher import matcher_service
from app.services.regex_parser import regex_parser_service

router = APIRouter()
logger = get_logger(__name__)


def _parse(request: RegexRequest):
    try:
        return regex_parser_service.parse(request.text, request.alphabet, OperatorSet.from_name(request.ops))
    except ValueError as e:
        # ReiError 也是 ValueError；未知算子集名同样返回 400
        logger.info(f"Rejected regex {request.text!r}: {e}")
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/parse", response_model=ParseResponse)
async def parse_regex(request: RegexRequest):
    """
    解析正则并返回规范形式
    """
    regex = _parse(request)
    return ParseResponse(
        canonical=regex_parser_service.format(regex),
        operators=[op.value for op in Op if op in operators_used(regex)],
        size=size(regex),
        nullable=matcher_service.nullable(regex),
    )


@router.post("/match", response_model=MatchResponse)
async def match_regex(request: MatchRequest):
    """
    逐个判定字符串是否属于正则语言
    """
    regex = _parse(request)
    return MatchResponse(
        canonical=regex_parser_service.format(regex),
        results={w: matcher_service.matches(regex, w) for w in request.strings},
    )


@router.post("/cost", response_model=CostResponse)
async def regex_cost(request: CostRequest):
    regex = _parse(request)
    try:
        cf = CostFunction.from_mapping(request.costs)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return CostResponse(canonical=regex_parser_service.format(regex), cost=cost(regex, cf))
