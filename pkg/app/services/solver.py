"""
精确正则推断求解器

按代价分层自底向上枚举：代价 k 的层由更便宜的层经一元/二元算子组合而成，
以足迹去重（观察等价），第一次出现精确足迹的层即给出最小代价。
"""
import time
from collections.abc import Iterator
from dataclasses import dataclass, field

from app.core.config import settings
from app.core.exceptions import ResourceLimitError
from app.core.logger import get_logger
from app.models.instance import Instance
from app.models.regex import (
    BINARY_OPS,
    UNARY_OPS,
    Op,
    Regex,
    build,
    concat,
    cost,
    iter_regexes,
    literal,
    operators_used,
)
from app.services.baselines import baseline_service
from app.services.footprint import FootprintLayout
from app.services.matcher import matcher_service

logger = get_logger(__name__)


@dataclass(frozen=True)
class SolverCaps:
    """资源上限：保留足迹总数与墙钟秒数"""
    max_footprints: int = settings.CAPS_FOOTPRINTS
    max_seconds: float = settings.CAPS_SECONDS


@dataclass(slots=True)
class Witness:
    """某足迹的最低代价代表元及其规范文本"""
    regex: Regex
    text: str


@dataclass
class Stratum:
    """代价恰为 cost 的新足迹及其代表元"""
    cost: int
    entries: dict[int, Witness]


@dataclass
class SolverStats:
    strata: int = 0
    footprints: int = 0
    candidates: int = 0
    elapsed: float = 0.0
    capped: str | None = None

    def to_dict(self) -> dict:
        return {
            "strata": self.strata,
            "footprints": self.footprints,
            "candidates": self.candidates,
            "elapsed": round(self.elapsed, 3),
            "capped": self.capped,
        }


@dataclass
class Solution:
    regex: Regex
    cost: int
    minimal: bool
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def text(self) -> str:
        return str(self.regex)


class _CapReached(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _StrataSearch:
    """单个实例的分层枚举状态"""

    def __init__(self, inst: Instance, caps: SolverCaps):
        self.inst = inst
        self.caps = caps
        self.cf = inst.cf
        self.layout = FootprintLayout.build(inst.pn.positives, inst.pn.negatives)
        self.strata: dict[int, dict[int, Witness]] = {}
        self.sorted_items: dict[int, list[tuple[int, Witness]]] = {}
        self.costs: list[int] = []
        self.seen: set[int] = set()
        self.current: dict[int, Witness] = {}
        self.stats = SolverStats()
        self.started = time.monotonic()
        self.unary = [op for op in UNARY_OPS if op in inst.ops]
        self.binary = [op for op in BINARY_OPS if op in inst.ops]

    def _check_time(self) -> None:
        if time.monotonic() - self.started > self.caps.max_seconds:
            raise _CapReached("seconds")

    def build(self, k: int) -> dict[int, Witness]:
        """构造代价为 k 的层；更便宜的层必须已全部完成"""
        layout = self.layout
        seen = self.seen
        current: dict[int, Witness] = {}
        self.current = current
        stats = self.stats
        budget = self.caps.max_footprints - len(seen)

        def offer(fp: int, op: Op, a: Witness, b: Witness | None) -> None:
            stats.candidates += 1
            if not stats.candidates & 0x3FF:
                self._check_time()
            if fp in seen:
                return
            if b is None:
                if op is Op.COMPLEMENT:
                    text = f"(~{a.text})"
                else:
                    text = f"({a.text}{op.value})"
                regex_args = (a.regex, None)
            else:
                if op.commutative and b.text < a.text:
                    a, b = b, a
                text = f"({a.text}{op.value}{b.text})"
                regex_args = (a.regex, b.regex)
            existing = current.get(fp)
            if existing is None:
                if len(current) >= budget:
                    raise _CapReached("footprints")
                current[fp] = Witness(build(op, *regex_args), text)
            elif text < existing.text:
                current[fp] = Witness(build(op, *regex_args), text)

        if k == self.cf.atom:
            for regex, fp in layout.leaf_footprints(self.inst.sigma, self.inst.ops):
                if fp in seen:
                    continue
                text = str(regex)
                existing = current.get(fp)
                if existing is None or text < existing.text:
                    current[fp] = Witness(regex, text)

        for op in self.unary:
            source = self.sorted_items.get(k - self.cf.of(op))
            if not source:
                continue
            for fa, wa in source:
                offer(layout.combine(op, fa), op, wa, None)

        for op in self.binary:
            rest = k - self.cf.of(op)
            combine = layout.combine
            for k1 in self.costs:
                k2 = rest - k1
                if k2 < self.cf.atom:
                    break
                if op.commutative and k1 > k2:
                    break
                right = self.sorted_items.get(k2)
                if not right:
                    continue
                left = self.sorted_items[k1]
                if op.commutative and k1 == k2:
                    for index, (fa, wa) in enumerate(left):
                        for fb, wb in left[index + 1:]:
                            offer(combine(op, fa, fb), op, wa, wb)
                else:
                    for fa, wa in left:
                        for fb, wb in right:
                            offer(combine(op, fa, fb), op, wa, wb)

        self._check_time()
        if current:
            self.strata[k] = current
            self.sorted_items[k] = sorted(current.items())
            self.costs.append(k)
            seen.update(current)
            stats.strata += 1
            stats.footprints = len(seen)
            logger.debug(f"Instance {self.inst.id}: stratum {k} holds {len(current)} new footprints")
        return current

    def precise_in(self, stratum: dict[int, Witness]) -> Witness | None:
        """层内字典序最小的精确代表元"""
        best = None
        for fp, witness in stratum.items():
            if self.layout.is_precise(fp) and (best is None or witness.text < best.text):
                best = witness
        return best


class SolverService:
    """精确求解服务"""

    def fallback(self, inst: Instance) -> Regex:
        """
        总是精确且可表示的解

        一般为平凡解；P 为空且不允许 ∅ 时，用比所有反例都长的字母串
        """
        trivial = baseline_service.trivial(inst)
        if inst.pn.positives or inst.ops.permits(operators_used(trivial)):
            return trivial
        longest = max((len(w) for w in inst.pn.negatives), default=0)
        symbol = inst.sigma[0]
        result = literal(symbol)
        for _ in range(longest):
            result = concat(literal(symbol), result)
        return result

    def trivial_cost_bound(self, inst: Instance) -> int:
        """正例并集（平凡解）在实例代价函数下的代价"""
        return cost(self.fallback(inst), inst.cf)

    def iter_strata(self, inst: Instance, max_cost: int, caps: SolverCaps | None = None) -> Iterator[Stratum]:
        """
        依次产出代价不超过 max_cost 的非空层

        Raises:
            ResourceLimitError: 构造某一层时超过资源上限
        """
        inst.require_feasible()
        search = _StrataSearch(inst, caps or SolverCaps())
        for k in range(inst.cf.atom, max_cost + 1):
            try:
                stratum = search.build(k)
            except _CapReached as e:
                raise ResourceLimitError(
                    f"Instance {inst.id}: {e.reason} cap reached while building stratum {k}"
                ) from None
            if stratum:
                yield Stratum(k, stratum)

    def solve(self, inst: Instance, caps: SolverCaps | None = None) -> Solution:
        """
        返回精确且（搜索完成时）代价最小的正则

        Args:
            inst: 推断实例，P 与 N 必须不相交
            caps: 资源上限，超限时返回目前最好的精确解并标记 minimal=False

        Raises:
            InfeasibleInstanceError: P ∩ N ≠ ∅
        """
        inst.require_feasible()
        caps = caps or SolverCaps()
        fallback = self.fallback(inst)
        bound = cost(fallback, inst.cf)
        search = _StrataSearch(inst, caps)
        stats = search.stats

        try:
            for k in range(inst.cf.atom, bound):
                stratum = search.build(k)
                best = search.precise_in(stratum)
                if best is not None:
                    stats.elapsed = time.monotonic() - search.started
                    logger.info(f"Instance {inst.id}: minimal cost {k} found, {stats.footprints} footprints")
                    return Solution(best.regex, k, True, stats)
        except _CapReached as e:
            stats.capped = e.reason
            stats.elapsed = time.monotonic() - search.started
            # 更便宜的层都已完成，当前层里的精确解仍是最小代价
            best = search.precise_in(search.current)
            if best is not None:
                found = cost(best.regex, inst.cf)
                logger.warning(f"Instance {inst.id}: {e.reason} cap reached inside final stratum {found}")
                return Solution(best.regex, found, True, stats)
            logger.warning(f"Instance {inst.id}: {e.reason} cap reached, returning fallback of cost {bound}")
            return Solution(fallback, bound, False, stats)

        stats.elapsed = time.monotonic() - search.started
        logger.info(f"Instance {inst.id}: fallback of cost {bound} is minimal")
        return Solution(fallback, bound, True, stats)

    def naive_minimal_cost(self, inst: Instance, max_cost: int) -> int | None:
        """
        不去重的朴素枚举，用导数匹配逐个检查精确性

        仅作小规模正确性对照；max_cost 内找不到时返回 None
        """
        for k, regex in iter_regexes(max_cost, inst.ops, inst.cf, inst.sigma):
            if matcher_service.is_precise(regex, inst.pn.positives, inst.pn.negatives):
                return k
        return None


solver_service = SolverService()
