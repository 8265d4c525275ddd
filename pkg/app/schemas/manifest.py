import hashlib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field


def file_digest(path: str | Path) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            sha.update(chunk)
    return sha.hexdigest()


class RunManifest(BaseModel):
    """一次命令行运行的可复现记录"""
    subcommand: str = Field(..., description="子命令")
    parameters: dict[str, Any] = Field(default_factory=dict, description="完整参数")
    seed: int | None = Field(None, description="随机种子")
    version: str = Field(..., description="工具版本")
    inputs: dict[str, str] = Field(default_factory=dict, description="输入文件 -> sha256")
    outputs: dict[str, str] = Field(default_factory=dict, description="输出文件 -> sha256")
    wall_clock: float = Field(default=0.0, description="耗时（秒）")
    exit_code: int = Field(default=0, description="退出码")

    @classmethod
    def for_files(cls, subcommand: str, parameters: dict[str, Any], version: str,
                  inputs: list[str | Path], outputs: list[str | Path], **kwargs) -> "RunManifest":
        return cls(
            subcommand=subcommand,
            parameters=parameters,
            version=version,
            inputs={str(p): file_digest(p) for p in inputs},
            outputs={str(p): file_digest(p) for p in outputs},
            **kwargs,
        )

    def write(self, out: str | Path) -> Path:
        """写到 <out>.manifest.json"""
        path = Path(f"{out}.manifest.json")
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path
