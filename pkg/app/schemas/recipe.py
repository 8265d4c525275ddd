from pathlib import Path

from dotenv import dotenv_values
from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config import settings
from app.core.exceptions import InfeasibleParametersError


def _parse_range(v) -> tuple[int, int]:
    """接受 "lo..hi"、单个整数或二元组"""
    if isinstance(v, str):
        text = v.strip()
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    if isinstance(v, int):
        return v, v
    lo, hi = v
    return int(lo), int(hi)


class DatasetRecipe(BaseModel):
    """数据集生成配方"""
    name: str = Field(default="ds", description="数据集名，作为实例ID前缀")
    pn_sets: int = Field(..., ge=0, description="PN集合个数")
    seed: int = Field(default=settings.SEED, description="随机种子")
    type1_share: float = Field(default=0.5, ge=0.0, le=1.0, description="Type 1 方案所占比例")
    sigma: str = Field(default=settings.ALPHABET, description="字母表")
    p_range: tuple[int, int] = Field(default=(1, 10), description="正例个数范围")
    n_range: tuple[int, int] = Field(default=(1, 10), description="反例个数范围")
    le_range_type1: tuple[int, int] = Field(default=(0, 7), description="Type 1 最大串长范围")
    le_range_type2: tuple[int, int] = Field(default=(0, 10), description="Type 2 最大串长范围")
    costs: str = Field(default=settings.COSTS, description="uniform 或 random")
    random_costs_per_set: int = Field(default=settings.RANDOM_COSTS_PER_SET, ge=0, description="每个PN集合的随机代价函数数")
    ops: str = Field(default=settings.OPS, description="reduced 或 full")

    @field_validator("p_range", "n_range", "le_range_type1", "le_range_type2", mode="before")
    @classmethod
    def parse_range(cls, v):
        return _parse_range(v)

    @field_validator("costs")
    @classmethod
    def check_costs(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in ("uniform", "random"):
            raise ValueError(f"costs must be uniform or random, got {v!r}")
        return v

    @field_validator("ops")
    @classmethod
    def check_ops(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in ("reduced", "full"):
            raise ValueError(f"ops must be reduced or full, got {v!r}")
        return v

    @model_validator(mode="after")
    def check_ranges(self):
        for name in ("p_range", "n_range", "le_range_type1", "le_range_type2"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: lower bound {lo} exceeds upper bound {hi}")
        if self.p_range[0] < 1 or self.n_range[0] < 1:
            raise ValueError("p and n must be at least 1")
        if self.le_range_type1[0] < 0 or self.le_range_type2[0] < 0:
            raise ValueError("le must be non-negative")
        return self

    @property
    def variants_per_set(self) -> int:
        """每个PN集合产生的实例数（均匀代价 + 随机代价）"""
        if self.costs == "random":
            return 1 + self.random_costs_per_set
        return 1

    @classmethod
    def from_file(cls, path: str | Path) -> "DatasetRecipe":
        """
        从 KEY=VALUE 文件读取配方，键名不区分大小写

        Raises:
            InfeasibleParametersError: 文件缺失或配方非法
        """
        path = Path(path)
        if not path.is_file():
            raise InfeasibleParametersError(f"Recipe file not found: {path}")
        raw = {k.strip().lower(): v for k, v in dotenv_values(path).items() if v is not None}
        try:
            return cls(**raw)
        except ValueError as e:
            raise InfeasibleParametersError(f"Invalid recipe {path}: {e}")
