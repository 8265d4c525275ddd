from pydantic import BaseModel, Field

from app.core.config import settings
from app.schemas.instance import InstanceRecord, SolutionRecord


class RegexRequest(BaseModel):
    text: str = Field(..., description="正则表达式文本")
    ops: str = Field(default="full", description="允许的算子集")
    alphabet: str = Field(default=settings.ALPHABET, description="字母表")


class ParseResponse(BaseModel):
    canonical: str
    operators: list[str]
    size: int
    nullable: bool


class MatchRequest(RegexRequest):
    strings: list[str] = Field(default_factory=list, description="待判定的字符串")


class MatchResponse(BaseModel):
    canonical: str
    results: dict[str, bool]


class CostRequest(RegexRequest):
    costs: dict[str, int] = Field(default_factory=dict, description="记号 -> 代价，缺省为 1")


class CostResponse(BaseModel):
    canonical: str
    cost: int


class SolveRequest(BaseModel):
    instance: InstanceRecord
    caps_footprints: int = Field(default=settings.CAPS_FOOTPRINTS, ge=1)
    caps_seconds: float = Field(default=60.0, gt=0)


class SolveResponse(BaseModel):
    id: str
    solution: SolutionRecord
    stats: dict
