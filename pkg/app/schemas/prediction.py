from pydantic import BaseModel, Field


class Prediction(BaseModel):
    """对某个实例的一条预测，正则文本可能无法解析"""
    id: str = Field(..., description="实例ID")
    text: str = Field(default="", description="原始正则文本")
