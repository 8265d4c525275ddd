"""
正则表达式具体语法的解析与打印

记号：'e' = ε，'E' = ∅，'.' 连接，'+' 并，'&' 交，'-' 差，前缀 '~' 补，
后缀 '?' 与 '*'，括号分组。
优先级从高到低：后缀 ?/*，前缀 ~，'.'（也可省略，直接并置），'&'，'-'，'+'；
二元算子左结合。打印总是输出完全加括号的规范形式。
"""
from app.core.config import settings
from app.core.exceptions import (
    OperatorNotAllowedError,
    RegexSyntaxError,
    SymbolNotInAlphabetError,
)
from app.core.logger import get_logger
from app.models.regex import (
    EMPTY_SET,
    EPSILON,
    FULL,
    Op,
    OperatorSet,
    Regex,
    literal,
    to_text,
)

logger = get_logger(__name__)

# 二元算子分层，从低到高
_BINARY_LEVELS: tuple[Op, ...] = (Op.OR, Op.MINUS, Op.AND, Op.CONCAT)
_OPERATOR_CHARS = set(".+&-~?*()")


class _Parser:
    """单次解析的递归下降状态"""

    def __init__(self, text: str, sigma: str, ops: OperatorSet):
        self.text = text
        self.sigma = sigma
        self.ops = ops
        self.pos = 0
        self.max_depth = settings.MAX_REGEX_DEPTH
        self.nesting = 0
        # id(结点) -> 子树深度，叶子为 1
        self.depths: dict[int, int] = {}

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str | None:
        self._skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return None

    def _require(self, op: Op, position: int) -> None:
        if op not in self.ops:
            raise OperatorNotAllowedError(
                f"Operator {op.value!r} is not allowed in operator set {self.ops.name}", position
            )

    def parse(self) -> Regex:
        if self._peek() is None:
            raise RegexSyntaxError("Empty regular expression", 0)
        try:
            result = self._binary(0)
        except RecursionError:
            raise RegexSyntaxError("Regular expression nested too deeply", self.pos) from None
        if self._peek() is not None:
            raise RegexSyntaxError(f"Unexpected {self.text[self.pos]!r}", self.pos)
        return result

    def _make(self, op: Op, left: Regex, right: Regex | None = None) -> Regex:
        depth = 1 + max(self.depths.get(id(left), 1), self.depths.get(id(right), 0))
        if depth > self.max_depth:
            raise RegexSyntaxError(f"Regular expression deeper than {self.max_depth}", self.pos)
        node = Regex(op, left, right)
        self.depths[id(node)] = depth
        return node

    def _enter(self, position: int) -> None:
        self.nesting += 1
        if self.nesting > self.max_depth:
            raise RegexSyntaxError(f"Regular expression nested deeper than {self.max_depth}", position)

    def _starts_primary(self, ch: str | None) -> bool:
        return ch is not None and (ch == "(" or ch == "~" or ch not in _OPERATOR_CHARS)

    def _binary(self, level: int) -> Regex:
        if level == len(_BINARY_LEVELS):
            return self._prefix()
        op = _BINARY_LEVELS[level]
        left = self._binary(level + 1)
        while True:
            ch = self._peek()
            if ch == op.value:
                position = self.pos
                self.pos += 1
            elif op is Op.CONCAT and self._starts_primary(ch):
                # 并置即连接
                position = self.pos
            else:
                return left
            self._require(op, position)
            right = self._binary(level + 1)
            left = self._make(op, left, right)

    def _prefix(self) -> Regex:
        if self._peek() == "~":
            position = self.pos
            self.pos += 1
            self._require(Op.COMPLEMENT, position)
            self._enter(position)
            inner = self._prefix()
            self.nesting -= 1
            return self._make(Op.COMPLEMENT, inner)
        return self._postfix()

    def _postfix(self) -> Regex:
        node = self._primary()
        while True:
            ch = self._peek()
            if ch == "?":
                self._require(Op.OPTION, self.pos)
                node = self._make(Op.OPTION, node)
            elif ch == "*":
                self._require(Op.STAR, self.pos)
                node = self._make(Op.STAR, node)
            else:
                return node
            self.pos += 1

    def _primary(self) -> Regex:
        ch = self._peek()
        position = self.pos
        if ch is None:
            raise RegexSyntaxError("Unexpected end of input", position)
        if ch == "(":
            self.pos += 1
            self._enter(position)
            inner = self._binary(0)
            self.nesting -= 1
            if self._peek() != ")":
                raise RegexSyntaxError("Expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch == "e":
            self.pos += 1
            self._require(Op.EPSILON, position)
            return EPSILON
        if ch == "E":
            self.pos += 1
            self._require(Op.EMPTY_SET, position)
            return EMPTY_SET
        if ch in _OPERATOR_CHARS:
            raise RegexSyntaxError(f"Unexpected {ch!r}", position)
        if ch not in self.sigma:
            raise SymbolNotInAlphabetError(f"Symbol {ch!r} is not in alphabet {self.sigma!r}", position)
        self.pos += 1
        return literal(ch)


class RegexParserService:
    """正则表达式解析/打印服务"""

    def parse(self, text: str, sigma: str | None = None, ops: OperatorSet = FULL) -> Regex:
        """
        解析具体语法

        Args:
            text: 正则表达式文本
            sigma: 字母表，默认取配置
            ops: 允许的算子集

        Returns:
            语法树
        """
        return _Parser(text, sigma or settings.ALPHABET, ops).parse()

    def try_parse(self, text: str | None, sigma: str | None = None, ops: OperatorSet = FULL) -> Regex | None:
        """解析失败时返回 None，供评分与检索使用"""
        if text is None:
            return None
        try:
            return self.parse(text, sigma, ops)
        except RegexSyntaxError as e:
            logger.debug(f"Rejected regex {text!r}: {e}")
            return None

    def format(self, r: Regex) -> str:
        """完全加括号的规范形式"""
        return to_text(r)

    def format_unwrapped(self, r: Regex) -> str:
        """规范形式去掉根结点外层括号（仅二元根结点），用于模型记号序列"""
        text = to_text(r)
        if r.op.arity == 2:
            return text[1:-1]
        return text

    def canonicalize(self, text: str, sigma: str | None = None, ops: OperatorSet = FULL) -> str:
        return self.format(self.parse(text, sigma, ops))


regex_parser_service = RegexParserService()
