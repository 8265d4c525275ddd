"""
足迹（footprint）代数

对固定的示例字符串列表（先正例后反例），正则 r 的足迹记录每个子串 w[i..j) 是否属于 L(r)。
所有字符串的矩阵打包进同一个 Python 整数：
    字符串 s 占一个 n×n 的块（n = 最长字符串长度 + 1），块内行优先，
    位 (s, i, j) 的下标为 s*n*n + i*n + j。
只有 i ≤ j ≤ |w_s| 的位有意义，其余位恒为 0。
等长的行使得布尔矩阵乘法可以用移位、掩码与整数乘法对所有字符串并行完成。
"""
from dataclasses import dataclass

from app.models.regex import EMPTY_SET, EPSILON, Op, Regex, literal


@dataclass(frozen=True)
class FootprintLayout:
    """某个实例的足迹位布局及常用掩码"""
    strings: tuple[str, ...]
    positive_count: int
    n: int
    valid: int
    diag: int
    row_start: int
    first_row: int
    repeat: int
    row_fill: int
    pos_mask: int
    neg_mask: int

    @classmethod
    def build(cls, positives: tuple[str, ...], negatives: tuple[str, ...]) -> "FootprintLayout":
        strings = tuple(positives) + tuple(negatives)
        n = max((len(w) for w in strings), default=0) + 1
        block = n * n
        valid = diag = row_start = first_row = pos_mask = neg_mask = 0
        for s, w in enumerate(strings):
            base = s * block
            for i in range(n):
                row_start |= 1 << (base + i * n)
                first_row |= 1 << (base + i)
            for i in range(len(w) + 1):
                diag |= 1 << (base + i * n + i)
                for j in range(i, len(w) + 1):
                    valid |= 1 << (base + i * n + j)
            accept = 1 << (base + len(w))
            if s < len(positives):
                pos_mask |= accept
            else:
                neg_mask |= accept
        repeat = 0
        for i in range(n):
            repeat |= 1 << (i * n)
        return cls(
            strings=strings,
            positive_count=len(positives),
            n=n,
            valid=valid,
            diag=diag,
            row_start=row_start,
            first_row=first_row,
            repeat=repeat,
            row_fill=(1 << n) - 1,
            pos_mask=pos_mask,
            neg_mask=neg_mask,
        )

    def index(self, s: int, i: int, j: int) -> int:
        return s * self.n * self.n + i * self.n + j

    def bit(self, fp: int, s: int, i: int, j: int) -> bool:
        return bool(fp >> self.index(s, i, j) & 1)

    def is_precise(self, fp: int) -> bool:
        """接受全部正例且拒绝全部反例"""
        return fp & self.pos_mask == self.pos_mask and not fp & self.neg_mask

    def accepted(self, fp: int) -> list[bool]:
        """每个示例字符串整体是否被接受"""
        return [self.bit(fp, s, 0, len(w)) for s, w in enumerate(self.strings)]

    # ------------------- 叶子 -------------------

    def literal_footprint(self, a: str) -> int:
        fp = 0
        for s, w in enumerate(self.strings):
            for i, ch in enumerate(w):
                if ch == a:
                    fp |= 1 << self.index(s, i, i + 1)
        return fp

    def leaf_footprints(self, sigma: str, ops) -> list[tuple[Regex, int]]:
        """∅（全零）、ε（单位矩阵）以及每个字母（次对角线）"""
        leaves: list[tuple[Regex, int]] = []
        if Op.EMPTY_SET in ops:
            leaves.append((EMPTY_SET, 0))
        if Op.EPSILON in ops:
            leaves.append((EPSILON, self.diag))
        for a in sigma:
            leaves.append((literal(a), self.literal_footprint(a)))
        return leaves

    # ------------------- 组合 -------------------

    def concat(self, a: int, b: int) -> int:
        """逐字符串的布尔矩阵乘积 M_a × M_b"""
        n = self.n
        row_start = self.row_start
        first_row = self.first_row
        row_fill = self.row_fill
        repeat = self.repeat
        result = 0
        for k in range(n):
            col = (a >> k) & row_start
            if not col:
                continue
            row = (b >> (k * n)) & first_row
            if not row:
                continue
            result |= (col * row_fill) & (row * repeat)
        return result

    def star(self, a: int) -> int:
        """单位矩阵并上去掉对角线后的传递闭包"""
        closure = (a & ~self.diag) | self.diag
        while True:
            squared = self.concat(closure, closure)
            if squared == closure:
                return closure
            closure = squared

    def combine(self, op: Op, a: int, b: int | None = None) -> int:
        if op is Op.OR:
            return a | b
        if op is Op.AND:
            return a & b
        if op is Op.MINUS:
            return a & ~b
        if op is Op.COMPLEMENT:
            return self.valid ^ a
        if op is Op.OPTION:
            return a | self.diag
        if op is Op.CONCAT:
            return self.concat(a, b)
        if op is Op.STAR:
            return self.star(a)
        raise ValueError(f"Not a combining operator: {op}")

    def triangle_bits(self, fp: int) -> str:
        """按字符串顺序、行优先上三角导出为 0/1 串，便于与其他实现对照"""
        bits = []
        for s, w in enumerate(self.strings):
            for i in range(len(w) + 1):
                for j in range(i, len(w) + 1):
                    bits.append("1" if self.bit(fp, s, i, j) else "0")
        return "".join(bits)
