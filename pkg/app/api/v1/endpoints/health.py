from fastapi import APIRouter

from app.core.config import settings
from app.core.logger import get_logger

router = APIRouter()
logger = get_logger(__name__)


@router.get("/")
async def health_check() -> dict:
    """
    健康检查接口
    """
    return {
        "status": "healthy",
        "version": settings.VERSION,
        "alphabet": settings.ALPHABET,
        "ops": settings.OPS,
    }
