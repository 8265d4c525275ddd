from pydantic import BaseModel, Field, field_validator

from app.models.instance import Instance, PNSet
from app.models.regex import CostFunction, OperatorSet


class SolutionRecord(BaseModel):
    regex: str = Field(..., description="规范形式的解")
    cost: int = Field(..., ge=0, description="解在实例代价函数下的代价")
    minimal: bool = Field(default=True, description="搜索是否完整证明了最小性")


class InstanceRecord(BaseModel):
    """实例文件中的一行"""
    id: str = Field(..., description="实例ID")
    alphabet: str = Field(default="01", description="字母表")
    pos: list[str] = Field(default_factory=list, description="正例")
    neg: list[str] = Field(default_factory=list, description="反例")
    ops: str = Field(default="reduced", description="允许的算子集")
    costs: dict[str, int] = Field(default_factory=lambda: CostFunction().to_mapping(), description="记号 -> 代价")
    solution: SolutionRecord | None = Field(None, description="标准解")
    error: str | None = Field(None, description="求解失败原因")

    @field_validator("ops")
    @classmethod
    def check_ops(cls, v: str) -> str:
        OperatorSet.from_name(v)
        return v

    def to_instance(self) -> Instance:
        """转换为领域对象；PN集合内重复会抛出 InfeasibleInstanceError"""
        return Instance(
            id=self.id,
            pn=PNSet(tuple(self.pos), tuple(self.neg)),
            cf=CostFunction.from_mapping(self.costs),
            ops=OperatorSet.from_name(self.ops),
            sigma=self.alphabet,
        )

    @classmethod
    def from_instance(cls, inst: Instance, solution: SolutionRecord | None = None,
                      error: str | None = None) -> "InstanceRecord":
        return cls(
            id=inst.id,
            alphabet=inst.sigma,
            pos=list(inst.pn.positives),
            neg=list(inst.pn.negatives),
            ops=inst.ops.name,
            costs=inst.cf.to_mapping(),
            solution=solution,
            error=error,
        )
