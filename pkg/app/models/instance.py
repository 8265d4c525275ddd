"""
推断问题实例：PN集合、代价函数与算子集
"""
from dataclasses import dataclass
from enum import Enum

from app.core.exceptions import InfeasibleInstanceError, InfeasibleParametersError
from app.models.regex import CostFunction, OperatorSet, REDUCED, UNIFORM


@dataclass(frozen=True)
class PNSet:
    """正例与反例字符串集合，保留输入顺序"""
    positives: tuple[str, ...]
    negatives: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.positives)) != len(self.positives):
            raise InfeasibleInstanceError("Positive strings must be distinct")
        if len(set(self.negatives)) != len(self.negatives):
            raise InfeasibleInstanceError("Negative strings must be distinct")

    @property
    def strings(self) -> tuple[str, ...]:
        """先正例后反例的固定顺序"""
        return self.positives + self.negatives

    def overlap(self) -> set[str]:
        return set(self.positives) & set(self.negatives)

    def is_disjoint(self) -> bool:
        return not self.overlap()

    def check_alphabet(self, sigma: str) -> None:
        for w in self.strings:
            bad = set(w) - set(sigma)
            if bad:
                raise InfeasibleInstanceError(f"String {w!r} uses symbols outside alphabet {sigma!r}")


@dataclass(frozen=True)
class Instance:
    """一个推断问题"""
    id: str
    pn: PNSet
    cf: CostFunction = UNIFORM
    ops: OperatorSet = REDUCED
    sigma: str = "01"

    def require_feasible(self) -> None:
        overlap = self.pn.overlap()
        if overlap:
            raise InfeasibleInstanceError(
                f"Instance {self.id}: strings in both P and N: {sorted(overlap)}"
            )
        self.pn.check_alphabet(self.sigma)


class Scheme(str, Enum):
    """PN集合生成方案"""
    TYPE1 = "type1"  # 在 Σ^{≤le} 上均匀采样
    TYPE2 = "type2"  # 先均匀采样长度，再均匀采样该长度的字符串


def count_strings(sigma_size: int, le: int) -> int:
    """长度不超过 le 的字符串总数"""
    if sigma_size == 1:
        return le + 1
    return (sigma_size ** (le + 1) - 1) // (sigma_size - 1)


@dataclass(frozen=True)
class GenParams:
    scheme: Scheme
    sigma: str
    le: int
    p: int
    n: int
    seed: int = 0

    def validate(self) -> None:
        if self.p < 1 or self.n < 1:
            raise InfeasibleParametersError(f"p and n must be at least 1, got p={self.p}, n={self.n}")
        if self.le < 0:
            raise InfeasibleParametersError(f"le must be non-negative, got {self.le}")
        if not self.sigma:
            raise InfeasibleParametersError("Alphabet must not be empty")
        available = count_strings(len(self.sigma), self.le)
        if self.p + self.n > available:
            raise InfeasibleParametersError(
                f"p+n={self.p + self.n} exceeds the {available} strings of length <= {self.le}"
            )
