from pydantic import field_validator
from pydantic_settings import BaseSettings as PydanticBaseSettings


class Settings(PydanticBaseSettings):
    # 基础配置
    PROJECT_NAME: str = "Regex Inference Toolkit"
    VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"

    # 服务器配置
    HOST: str = "0.0.0.0"
    PORT: int = 8000

    # 字母表，'e' 与 'E' 为保留字符
    ALPHABET: str = "01"

    # 运行参数（命令行参数的默认值，可由同名环境变量覆盖）
    SEED: int = 0
    OPS: str = "reduced"  # reduced, full
    COSTS: str = "uniform"  # uniform, random
    WORKERS: int = 1

    # 求解器资源上限
    CAPS_FOOTPRINTS: int = 10_000_000
    CAPS_SECONDS: float = 600.0

    # 代价函数生成
    COST_RANGE_MAX: int = 49
    COST_SENTINEL: int = 1_000_000  # 被排除算子的代价，高于任何平凡解
    RANDOM_COSTS_PER_SET: int = 19

    # 匹配引擎
    MATCH_NODE_CAP: int = 5_000
    LANGUAGE_ENUM_CAP: int = 1_000_000
    MAX_REGEX_DEPTH: int = 100  # 解析时允许的最大嵌套深度

    # 评分输出
    SCORE_DECIMALS: int = 4

    # 数据集切分
    SPLIT_TEST_RATIO: float = 0.1

    @field_validator("ALPHABET")
    @classmethod
    def check_alphabet(cls, v: str) -> str:
        """字母表不能为空、不能重复，也不能包含语法保留字符"""
        reserved = set("eE.+&-~?*() \t")
        if not v or len(set(v)) != len(v) or reserved & set(v):
            raise ValueError(f"Invalid ALPHABET: {v!r}")
        return v

    # 日志配置
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    class Config:
        env_file: str = ".env"
        case_sensitive: bool = True


settings = Settings()
