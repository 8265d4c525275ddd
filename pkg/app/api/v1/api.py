from fastapi import APIRouter

from app.api.v1.endpoints import health, regex, solve

api_router = APIRouter()

api_router.include_router(health.router, prefix="/health", tags=["health"])
api_router.include_router(regex.router, prefix="/regex", tags=["regex"])
api_router.include_router(solve.router, prefix="/solve", tags=["solve"])
