"""
领域异常

所有异常都继承自 ValueError，调用方可以只捕获 ReiError 统一处理
"""


class ReiError(ValueError):
    """正则推断工具包的基础异常"""


class RegexSyntaxError(ReiError):
    """正则表达式语法错误，position 为出错字符的下标"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SymbolNotInAlphabetError(RegexSyntaxError):
    """符号不在实例字母表内"""


class OperatorNotAllowedError(RegexSyntaxError):
    """算子不在实例允许的算子集内"""


class InfeasibleInstanceError(ReiError):
    """正例集与反例集相交，实例无解"""


class InfeasibleParametersError(ReiError):
    """生成参数无法满足（例如 p+n 超过可用字符串数）"""


class InfeasibleSplitError(ReiError):
    """训练/测试切分约束无法满足"""


class MalformedFileError(ReiError):
    """文件行无法解析"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DataCorruptionError(MalformedFileError):
    """文件内容可解析，但违反了记录的不变量"""


class DuplicatePredictionError(ReiError):
    """同一实例出现多条预测"""


class UnknownPredictionError(ReiError):
    """预测引用了不存在的实例"""


class ResourceLimitError(ReiError):
    """超过配置的资源上限"""
