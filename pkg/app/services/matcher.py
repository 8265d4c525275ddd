"""
基于 Brzozowski 导数的成员判定

对完整的十种结点语法判定 w ∈ L(r)，另提供有界语言枚举作为独立的测试基准。
"""
from itertools import product

from app.core.config import settings
from app.core.exceptions import ResourceLimitError
from app.core.logger import get_logger
from app.models.regex import EMPTY_SET, EPSILON, Op, Regex, size

logger = get_logger(__name__)


# ------------------- 化简构造器（保持语言不变） -------------------

def mk_or(left: Regex, right: Regex) -> Regex:
    if left.op is Op.EMPTY_SET:
        return right
    if right.op is Op.EMPTY_SET:
        return left
    if left == right:
        return left
    return Regex(Op.OR, left, right)


def mk_concat(left: Regex, right: Regex) -> Regex:
    if left.op is Op.EMPTY_SET or right.op is Op.EMPTY_SET:
        return EMPTY_SET
    if left.op is Op.EPSILON:
        return right
    if right.op is Op.EPSILON:
        return left
    return Regex(Op.CONCAT, left, right)


def mk_and(left: Regex, right: Regex) -> Regex:
    if left.op is Op.EMPTY_SET or right.op is Op.EMPTY_SET:
        return EMPTY_SET
    if left == right:
        return left
    return Regex(Op.AND, left, right)


def mk_minus(left: Regex, right: Regex) -> Regex:
    if left.op is Op.EMPTY_SET:
        return EMPTY_SET
    if right.op is Op.EMPTY_SET:
        return left
    if left == right:
        return EMPTY_SET
    return Regex(Op.MINUS, left, right)


def mk_complement(r: Regex) -> Regex:
    if r.op is Op.COMPLEMENT:
        return r.left
    return Regex(Op.COMPLEMENT, r)


class MatcherService:
    """成员判定服务"""

    def nullable(self, r: Regex) -> bool:
        """ε ∈ L(r)"""
        op = r.op
        if op is Op.EMPTY_SET or op is Op.LITERAL:
            return False
        if op is Op.EPSILON or op is Op.OPTION or op is Op.STAR:
            return True
        if op is Op.COMPLEMENT:
            return not self.nullable(r.left)
        if op is Op.CONCAT or op is Op.AND:
            return self.nullable(r.left) and self.nullable(r.right)
        if op is Op.OR:
            return self.nullable(r.left) or self.nullable(r.right)
        # Op.MINUS
        return self.nullable(r.left) and not self.nullable(r.right)

    def derivative(self, r: Regex, a: str) -> Regex:
        """L(derivative(r, a)) = { w | aw ∈ L(r) }"""
        op = r.op
        if op is Op.EMPTY_SET or op is Op.EPSILON:
            return EMPTY_SET
        if op is Op.LITERAL:
            return EPSILON if r.symbol == a else EMPTY_SET
        if op is Op.OPTION:
            return self.derivative(r.left, a)
        if op is Op.STAR:
            return mk_concat(self.derivative(r.left, a), r)
        if op is Op.COMPLEMENT:
            return mk_complement(self.derivative(r.left, a))
        if op is Op.CONCAT:
            head = mk_concat(self.derivative(r.left, a), r.right)
            if self.nullable(r.left):
                return mk_or(head, self.derivative(r.right, a))
            return head
        if op is Op.AND:
            return mk_and(self.derivative(r.left, a), self.derivative(r.right, a))
        if op is Op.OR:
            return mk_or(self.derivative(r.left, a), self.derivative(r.right, a))
        return mk_minus(self.derivative(r.left, a), self.derivative(r.right, a))

    def residual(self, r: Regex, w: str) -> Regex:
        """依次对 w 的每个字符求导，恰好 |w| 步"""
        for a in w:
            r = self.derivative(r, a)
        return r

    def matches(self, r: Regex, w: str) -> bool:
        result = self.residual(r, w)
        if size(result) > settings.MATCH_NODE_CAP:
            logger.warning(f"Derivative of size {size(result)} exceeds node cap {settings.MATCH_NODE_CAP}")
        return self.nullable(result)

    def classify(self, r: Regex, positives: tuple[str, ...], negatives: tuple[str, ...]) -> tuple[int, int]:
        """返回 (被接受的正例数, 被拒绝的反例数)"""
        pos_ok = sum(1 for w in positives if self.matches(r, w))
        neg_ok = sum(1 for w in negatives if not self.matches(r, w))
        return pos_ok, neg_ok

    def is_precise(self, r: Regex, positives: tuple[str, ...], negatives: tuple[str, ...]) -> bool:
        return all(self.matches(r, w) for w in positives) and not any(self.matches(r, w) for w in negatives)

    def bounded_language(self, r: Regex, sigma: str, max_len: int) -> set[str]:
        """
        L(r) ∩ Σ^{≤max_len}，直接按语义子句做集合递归

        Raises:
            ResourceLimitError: |Σ|^(max_len+1) 超过配置上限
        """
        if len(sigma) ** (max_len + 1) > settings.LANGUAGE_ENUM_CAP:
            raise ResourceLimitError(
                f"Enumerating strings up to length {max_len} over {sigma!r} exceeds cap {settings.LANGUAGE_ENUM_CAP}"
            )
        universe = {
            "".join(chars)
            for length in range(max_len + 1)
            for chars in product(sigma, repeat=length)
        }
        return self._language(r, universe, max_len)

    def _language(self, r: Regex, universe: set[str], k: int) -> set[str]:
        op = r.op
        if op is Op.EMPTY_SET:
            return set()
        if op is Op.EPSILON:
            return {""}
        if op is Op.LITERAL:
            return {r.symbol} if k >= 1 else set()
        if op is Op.OPTION:
            return self._language(r.left, universe, k) | {""}
        if op is Op.COMPLEMENT:
            return universe - self._language(r.left, universe, k)
        if op is Op.STAR:
            base = {w for w in self._language(r.left, universe, k) if w}
            result = {""}
            frontier = {""}
            while frontier:
                frontier = {x + y for x in frontier for y in base if len(x) + len(y) <= k} - result
                result |= frontier
            return result
        left = self._language(r.left, universe, k)
        right = self._language(r.right, universe, k)
        if op is Op.CONCAT:
            return {x + y for x in left for y in right if len(x) + len(y) <= k}
        if op is Op.AND:
            return left & right
        if op is Op.OR:
            return left | right
        return left - right


matcher_service = MatcherService()
