from fastapi import APIRouter, HTTPException
from fastapi.concurrency import run_in_threadpool

from app.core.exceptions import ReiError
from app.core.logger import get_logger
from app.schemas.api import SolveRequest, SolveResponse
from app.schemas.instance import SolutionRecord
from app.services.solver import SolverCaps, solver_service

router = APIRouter()
logger = get_logger(__name__)


@router.post("/", response_model=SolveResponse)
async def solve_instance(request: SolveRequest):
    """
    求解单个实例

    搜索在线程池中运行，超过请求给出的上限时返回 minimal=false 的精确解
    """
    caps = SolverCaps(max_footprints=request.caps_footprints, max_seconds=request.caps_seconds)
    try:
        inst = request.instance.to_instance()
        solution = await run_in_threadpool(solver_service.solve, inst, caps)
    except ReiError as e:
        logger.error(f"Solve request for {request.instance.id} failed: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return SolveResponse(
        id=inst.id,
        solution=SolutionRecord(regex=solution.text, cost=solution.cost, minimal=solution.minimal),
        stats=solution.stats.to_dict(),
    )
