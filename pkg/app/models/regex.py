"""
扩展正则表达式的抽象语法树、算子集与代价函数

语法树只有十种结点，所有值构造后不可变，可在线程/进程间自由共享。
"""
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class Op(str, Enum):
    """语法树结点种类，取值即具体语法中的记号"""
    EMPTY_SET = "E"
    EPSILON = "e"
    LITERAL = "a"
    OPTION = "?"
    STAR = "*"
    COMPLEMENT = "~"
    CONCAT = "."
    AND = "&"
    OR = "+"
    MINUS = "-"

    @property
    def arity(self) -> int:
        if self in LEAF_OPS:
            return 0
        if self in UNARY_OPS:
            return 1
        return 2

    @property
    def commutative(self) -> bool:
        return self in (Op.AND, Op.OR)


LEAF_OPS = (Op.EMPTY_SET, Op.EPSILON, Op.LITERAL)
UNARY_OPS = (Op.OPTION, Op.STAR, Op.COMPLEMENT)
BINARY_OPS = (Op.CONCAT, Op.AND, Op.OR, Op.MINUS)


@dataclass(frozen=True, slots=True)
class Regex:
    """正则表达式结点；LITERAL 使用 symbol，一元结点使用 left"""
    op: Op
    left: Optional["Regex"] = None
    right: Optional["Regex"] = None
    symbol: str | None = None

    def __str__(self) -> str:
        return to_text(self)


EMPTY_SET = Regex(Op.EMPTY_SET)
EPSILON = Regex(Op.EPSILON)


def literal(symbol: str) -> Regex:
    return Regex(Op.LITERAL, symbol=symbol)


def option(r: Regex) -> Regex:
    return Regex(Op.OPTION, r)


def star(r: Regex) -> Regex:
    return Regex(Op.STAR, r)


def complement(r: Regex) -> Regex:
    return Regex(Op.COMPLEMENT, r)


def concat(left: Regex, right: Regex) -> Regex:
    return Regex(Op.CONCAT, left, right)


def intersect(left: Regex, right: Regex) -> Regex:
    return Regex(Op.AND, left, right)


def union(left: Regex, right: Regex) -> Regex:
    return Regex(Op.OR, left, right)


def minus(left: Regex, right: Regex) -> Regex:
    return Regex(Op.MINUS, left, right)


def build(op: Op, left: Regex | None = None, right: Regex | None = None) -> Regex:
    """按结点种类构造非叶结点"""
    if op.arity == 1:
        return Regex(op, left)
    return Regex(op, left, right)


def to_text(r: Regex) -> str:
    """
    规范文本形式：叶子裸写，每个非叶结点整体加一层括号

    例如 Star(Concat(0,1)) -> "((0.1)*)"，Complement(1) -> "(~1)"
    """
    if r.op is Op.LITERAL:
        return r.symbol or ""
    if r.op.arity == 0:
        return r.op.value
    if r.op is Op.COMPLEMENT:
        return f"(~{to_text(r.left)})"
    if r.op.arity == 1:
        return f"({to_text(r.left)}{r.op.value})"
    return f"({to_text(r.left)}{r.op.value}{to_text(r.right)})"


def size(r: Regex) -> int:
    """结点个数（叶子加算子）"""
    if r.op.arity == 0:
        return 1
    if r.op.arity == 1:
        return 1 + size(r.left)
    return 1 + size(r.left) + size(r.right)


def operators_used(r: Regex) -> frozenset[Op]:
    """语法树中出现的全部结点种类"""
    found: set[Op] = set()
    stack = [r]
    while stack:
        node = stack.pop()
        found.add(node.op)
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)
    return frozenset(found)


def symbols_used(r: Regex) -> frozenset[str]:
    found: set[str] = set()
    stack = [r]
    while stack:
        node = stack.pop()
        if node.op is Op.LITERAL and node.symbol is not None:
            found.add(node.symbol)
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)
    return frozenset(found)


@dataclass(frozen=True)
class OperatorSet:
    """
    实例允许使用的结点种类

    并集、连接、ε 与字母字符总是开启，保证平凡解可表示
    """
    ops: frozenset[Op]

    def __post_init__(self):
        required = {Op.EPSILON, Op.LITERAL, Op.CONCAT, Op.OR}
        if not required <= self.ops:
            raise ValueError("Operator set must enable epsilon, literal, concat and union")

    def __contains__(self, op: object) -> bool:
        return op in self.ops

    def permits(self, used: Iterable[Op]) -> bool:
        return set(used) <= self.ops

    @property
    def name(self) -> str:
        if self.ops == REDUCED.ops:
            return "reduced"
        if self.ops == FULL.ops:
            return "full"
        return ",".join(op.value for op in Op if op in self.ops)

    @classmethod
    def from_name(cls, name: str) -> "OperatorSet":
        key = name.strip().lower()
        if key == "reduced":
            return REDUCED
        if key == "full":
            return FULL
        try:
            return cls(frozenset(Op(token.strip()) for token in name.split(",") if token.strip()))
        except ValueError:
            raise ValueError(f"Unknown operator set: {name!r}")


REDUCED = OperatorSet(frozenset({Op.EPSILON, Op.LITERAL, Op.OPTION, Op.STAR, Op.CONCAT, Op.OR}))
FULL = OperatorSet(frozenset(Op))


# 代价函数字段与结点种类的对应关系，顺序即词表中 COST 记号的顺序
_COST_FIELDS: dict[str, tuple[Op, ...]] = {
    "atom": (Op.EMPTY_SET, Op.EPSILON, Op.LITERAL),
    "option": (Op.OPTION,),
    "star": (Op.STAR,),
    "concat": (Op.CONCAT,),
    "union": (Op.OR,),
    "complement": (Op.COMPLEMENT,),
    "intersection": (Op.AND,),
    "minus": (Op.MINUS,),
}


@dataclass(frozen=True)
class CostFunction:
    """八个算子代价常数；atom 同时覆盖 ∅、ε 与所有字母"""
    atom: int = 1
    option: int = 1
    star: int = 1
    concat: int = 1
    union: int = 1
    complement: int = 1
    intersection: int = 1
    minus: int = 1
    _by_op: dict[Op, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table: dict[Op, int] = {}
        for name, ops in _COST_FIELDS.items():
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"Cost {name} must be a positive integer, got {value!r}")
            for op in ops:
                table[op] = value
        object.__setattr__(self, "_by_op", table)

    def of(self, op: Op) -> int:
        return self._by_op[op]

    def to_mapping(self, ops: OperatorSet | None = None) -> dict[str, int]:
        """以记号为键导出，ops 给定时只导出相关算子"""
        mapping = {}
        for name, members in _COST_FIELDS.items():
            if ops is not None and not any(op in ops for op in members):
                continue
            key = "a" if name == "atom" else members[0].value
            mapping[key] = getattr(self, name)
        return mapping

    @classmethod
    def from_mapping(cls, mapping: dict[str, int], default: int = 1) -> "CostFunction":
        values = {}
        keys = set()
        for name, members in _COST_FIELDS.items():
            key = "a" if name == "atom" else members[0].value
            keys.add(key)
            values[name] = int(mapping.get(key, default))
        unknown = set(mapping) - keys
        if unknown:
            raise ValueError(f"Unknown cost keys: {sorted(unknown)}")
        return cls(**values)


UNIFORM = CostFunction()


def cost(r: Regex, cf: CostFunction) -> int:
    """各叶子与算子代价之和，括号不计入"""
    total = cf.of(r.op)
    if r.left is not None:
        total += cost(r.left, cf)
    if r.right is not None:
        total += cost(r.right, cf)
    return total


def iter_regexes(max_cost: int, ops: OperatorSet, cf: CostFunction, sigma: str) -> Iterator[tuple[int, Regex]]:
    """
    按代价从低到高穷举所有语法树，不做任何去重

    只用于小代价的正确性检查，数量随代价指数增长
    """
    by_cost: dict[int, list[Regex]] = {}
    atom = cf.atom
    leaves = []
    if Op.EMPTY_SET in ops:
        leaves.append(EMPTY_SET)
    if Op.EPSILON in ops:
        leaves.append(EPSILON)
    leaves.extend(literal(a) for a in sigma)

    unary = [op for op in UNARY_OPS if op in ops]
    binary = [op for op in BINARY_OPS if op in ops]

    for k in range(atom, max_cost + 1):
        level: list[Regex] = list(leaves) if k == atom else []
        for op in unary:
            level.extend(Regex(op, r) for r in by_cost.get(k - cf.of(op), ()))
        for op in binary:
            rest = k - cf.of(op)
            for k1 in range(atom, rest - atom + 1):
                lefts = by_cost.get(k1)
                rights = by_cost.get(rest - k1)
                if not lefts or not rights:
                    continue
                level.extend(Regex(op, a, b) for a in lefts for b in rights)
        if level:
            by_cost[k] = level
            for r in level:
                yield k, r
