"""
启发式基线：平凡正则、PN检索、正则检索
"""
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from app.core.exceptions import DataCorruptionError
from app.core.logger import get_logger
from app.models.instance import Instance
from app.models.regex import (
    EMPTY_SET,
    EPSILON,
    Regex,
    concat,
    cost,
    literal,
    operators_used,
    symbols_used,
    to_text,
    union,
)
from app.services.matcher import matcher_service

logger = get_logger(__name__)


class BaselineKind(str, Enum):
    TRIVIAL = "trivial"
    PN_RETRIEVAL = "pn-retrieval"
    RE_RETRIEVAL = "re-retrieval"


@dataclass(frozen=True)
class CorpusEntry:
    """训练集中的一条已解实例"""
    id: str
    positives: frozenset[str]
    negatives: frozenset[str]
    regex: Regex
    text: str


class TrainCorpus:
    """带标准解的训练语料，按PN集合与解正则两种方式索引"""

    def __init__(self, entries: list[CorpusEntry]):
        self.entries = entries
        self.regexes: dict[str, Regex] = {}
        for entry in entries:
            self.regexes.setdefault(entry.text, entry.regex)

    @classmethod
    def from_solved(cls, solved: Iterable[tuple[Instance, Regex]]) -> "TrainCorpus":
        """
        构建语料并校验每条解对其实例是精确的

        Raises:
            DataCorruptionError: 存储的解不精确
        """
        entries = []
        for position, (inst, regex) in enumerate(solved, start=1):
            if not matcher_service.is_precise(regex, inst.pn.positives, inst.pn.negatives):
                raise DataCorruptionError(f"Stored solution of {inst.id} is not precise", position)
            entries.append(CorpusEntry(
                id=inst.id,
                positives=frozenset(inst.pn.positives),
                negatives=frozenset(inst.pn.negatives),
                regex=regex,
                text=to_text(regex),
            ))
        logger.info(f"Loaded training corpus with {len(entries)} instances and "
                    f"{len({e.text for e in entries})} distinct solutions")
        return cls(entries)

    def __len__(self) -> int:
        return len(self.entries)


class BaselineService:
    """基线预测服务"""

    def string_regex(self, w: str) -> Regex:
        """字符串的右嵌套连接编码，空串编码为 ε"""
        if not w:
            return EPSILON
        result = literal(w[-1])
        for ch in reversed(w[:-1]):
            result = concat(literal(ch), result)
        return result

    def trivial(self, inst: Instance) -> Regex:
        """正例的右嵌套并；P 为空时返回 ∅"""
        positives = inst.pn.positives
        if not positives:
            return EMPTY_SET
        parts = [self.string_regex(w) for w in positives]
        result = parts[-1]
        for part in reversed(parts[:-1]):
            result = union(part, result)
        return result

    def _usable(self, inst: Instance, regex: Regex) -> bool:
        return inst.ops.permits(operators_used(regex)) and symbols_used(regex) <= set(inst.sigma)

    def pn_retrieval(self, inst: Instance, corpus: TrainCorpus) -> Regex:
        """
        取与测试实例PN集合重叠最大的训练实例的解

        重叠 = |P∩P'| + |N∩N'|；并列时取测试代价函数下代价最低者，再按规范文本排序
        """
        positives = set(inst.pn.positives)
        negatives = set(inst.pn.negatives)
        best_key = None
        best = None
        for entry in corpus.entries:
            if not self._usable(inst, entry.regex):
                continue
            overlap = len(positives & entry.positives) + len(negatives & entry.negatives)
            key = (-overlap, cost(entry.regex, inst.cf), entry.text)
            if best_key is None or key < best_key:
                best_key, best = key, entry.regex
        if best is None:
            logger.warning(f"No usable corpus entry for {inst.id}, falling back to trivial")
            return self.trivial(inst)
        return best

    def pn_ratio(self, inst: Instance, regex: Regex) -> Fraction:
        total = len(inst.pn.positives) + len(inst.pn.negatives)
        if total == 0:
            return Fraction(1)
        pos_ok, neg_ok = matcher_service.classify(regex, inst.pn.positives, inst.pn.negatives)
        return Fraction(pos_ok + neg_ok, total)

    def re_retrieval(self, inst: Instance, corpus: TrainCorpus) -> Regex:
        """
        在语料全部不同的解中取 PN Ratio 最高者

        并列时取测试代价函数下代价最低者，再按规范文本排序
        """
        best_key = None
        best = None
        for text, regex in corpus.regexes.items():
            if not self._usable(inst, regex):
                continue
            key = (-self.pn_ratio(inst, regex), cost(regex, inst.cf), text)
            if best_key is None or key < best_key:
                best_key, best = key, regex
        if best is None:
            logger.warning(f"No usable corpus regex for {inst.id}, falling back to trivial")
            return self.trivial(inst)
        return best

    def predict(self, kind: BaselineKind, inst: Instance, corpus: TrainCorpus | None = None) -> Regex:
        if kind is BaselineKind.TRIVIAL:
            return self.trivial(inst)
        if corpus is None or not len(corpus):
            raise ValueError(f"Baseline {kind.value} requires a non-empty training corpus")
        if kind is BaselineKind.PN_RETRIEVAL:
            return self.pn_retrieval(inst, corpus)
        return self.re_retrieval(inst, corpus)


baseline_service = BaselineService()
