"""
挑战赛评分

十项指标全部以精确有理数计算，只在输出时按 SCORE_DECIMALS 舍入。
无法解析或使用了实例不允许的算子的预测记为无效，它的每个示例串都算判错；
缺失的预测同样记为无效。
"""
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.config import settings
from app.core.exceptions import (
    DataCorruptionError,
    DuplicatePredictionError,
    UnknownPredictionError,
)
from app.core.logger import get_logger
from app.models.regex import cost
from app.schemas.instance import InstanceRecord
from app.schemas.prediction import Prediction
from app.services.matcher import matcher_service
from app.services.regex_parser import regex_parser_service

logger = get_logger(__name__)


@dataclass(frozen=True)
class Ratio:
    """保留分子分母的比值；分母为 0 时取 0"""
    num: int
    den: int

    @property
    def value(self) -> Fraction:
        if self.den == 0:
            return Fraction(0)
        return Fraction(self.num, self.den)

    def to_dict(self, decimals: int) -> dict:
        return {"num": self.num, "den": self.den, "value": float(round(self.value, decimals))}


@dataclass(frozen=True)
class InstanceOutcome:
    """单个实例的评分结果"""
    id: str
    valid: bool
    precise: bool
    minimal: bool
    positives: int
    negatives: int
    pos_ok: int
    neg_ok: int
    cost_ratio: Fraction | None


@dataclass
class ScoreReport:
    total: int
    compile_ratio: Ratio
    precise_absolute: int
    precise_ratio: Ratio
    positive_ratio: Ratio
    negative_ratio: Ratio
    pn_ratio: Ratio
    minimal_instances: int
    minimal_ratio_precise: Ratio
    minimal_ratio_global: Ratio
    cost_ratio: Fraction | None
    macro_positive_ratio: Fraction | None = None
    macro_negative_ratio: Fraction | None = None
    macro_pn_ratio: Fraction | None = None
    outcomes: list[InstanceOutcome] = field(default_factory=list, repr=False)

    def to_dict(self, decimals: int | None = None) -> dict:
        decimals = settings.SCORE_DECIMALS if decimals is None else decimals

        def fraction(value: Fraction | None) -> dict | None:
            if value is None:
                return None
            return {"num": value.numerator, "den": value.denominator, "value": float(round(value, decimals))}

        return {
            "total": self.total,
            "compile_ratio": self.compile_ratio.to_dict(decimals),
            "precise_absolute": self.precise_absolute,
            "precise_ratio": self.precise_ratio.to_dict(decimals),
            "positive_ratio": self.positive_ratio.to_dict(decimals),
            "negative_ratio": self.negative_ratio.to_dict(decimals),
            "pn_ratio": self.pn_ratio.to_dict(decimals),
            "minimal_instances": self.minimal_instances,
            "minimal_ratio_precise": self.minimal_ratio_precise.to_dict(decimals),
            "minimal_ratio_global": self.minimal_ratio_global.to_dict(decimals),
            "cost_ratio": fraction(self.cost_ratio),
            "macro_positive_ratio": fraction(self.macro_positive_ratio),
            "macro_negative_ratio": fraction(self.macro_negative_ratio),
            "macro_pn_ratio": fraction(self.macro_pn_ratio),
        }


TABLE_COLUMNS = ("CR", "Prec", "Prec%", "P%", "N%", "PN%", "Min", "Min%P", "Min%G", "Cost Ratio")


def _mean(values: list[Fraction]) -> Fraction | None:
    if not values:
        return None
    return sum(values, Fraction(0)) / len(values)


class ScoringService:
    """评分服务"""

    def score_instance(self, record: InstanceRecord, text: str | None) -> InstanceOutcome:
        """
        对单个实例评分

        Raises:
            DataCorruptionError: 标准记录没有解
        """
        if record.solution is None:
            raise DataCorruptionError(f"Gold record {record.id} has no solution", 0)
        inst = record.to_instance()
        positives, negatives = len(inst.pn.positives), len(inst.pn.negatives)
        regex = regex_parser_service.try_parse(text, inst.sigma, inst.ops)
        if regex is None:
            return InstanceOutcome(record.id, False, False, False, positives, negatives, 0, 0, None)
        pos_ok, neg_ok = matcher_service.classify(regex, inst.pn.positives, inst.pn.negatives)
        precise = pos_ok == positives and neg_ok == negatives
        ratio = None
        minimal = False
        if precise:
            predicted = cost(regex, inst.cf)
            ratio = Fraction(predicted, record.solution.cost)
            minimal = predicted <= record.solution.cost
        return InstanceOutcome(record.id, True, precise, minimal, positives, negatives, pos_ok, neg_ok, ratio)

    def aggregate(self, outcomes: list[InstanceOutcome]) -> ScoreReport:
        total = len(outcomes)
        valid = sum(1 for o in outcomes if o.valid)
        precise = sum(1 for o in outcomes if o.precise)
        minimal = sum(1 for o in outcomes if o.minimal)
        pos_total = sum(o.positives for o in outcomes)
        neg_total = sum(o.negatives for o in outcomes)
        pos_ok = sum(o.pos_ok for o in outcomes)
        neg_ok = sum(o.neg_ok for o in outcomes)
        return ScoreReport(
            total=total,
            compile_ratio=Ratio(valid, total),
            precise_absolute=precise,
            precise_ratio=Ratio(precise, total),
            positive_ratio=Ratio(pos_ok, pos_total),
            negative_ratio=Ratio(neg_ok, neg_total),
            pn_ratio=Ratio(pos_ok + neg_ok, pos_total + neg_total),
            minimal_instances=minimal,
            minimal_ratio_precise=Ratio(minimal, precise),
            minimal_ratio_global=Ratio(minimal, total),
            cost_ratio=_mean([o.cost_ratio for o in outcomes if o.cost_ratio is not None]),
            macro_positive_ratio=_mean([Fraction(o.pos_ok, o.positives) for o in outcomes if o.positives]),
            macro_negative_ratio=_mean([Fraction(o.neg_ok, o.negatives) for o in outcomes if o.negatives]),
            macro_pn_ratio=_mean([
                Fraction(o.pos_ok + o.neg_ok, o.positives + o.negatives)
                for o in outcomes if o.positives + o.negatives
            ]),
            outcomes=outcomes,
        )

    def score(self, predictions: list[Prediction], gold: list[InstanceRecord]) -> ScoreReport:
        """
        计算全部指标

        Args:
            predictions: 预测，ID 须为标准实例ID的子集
            gold: 带标准解的实例

        Raises:
            DuplicatePredictionError: 同一实例有多条预测
            UnknownPredictionError: 预测引用了未知实例
        """
        by_id: dict[str, str] = {}
        gold_ids = {record.id for record in gold}
        for pred in predictions:
            if pred.id in by_id:
                raise DuplicatePredictionError(f"Duplicate prediction for {pred.id}")
            if pred.id not in gold_ids:
                raise UnknownPredictionError(f"Prediction for unknown instance {pred.id}")
            by_id[pred.id] = pred.text

        missing = len(gold_ids) - len(by_id)
        if missing:
            logger.warning(f"{missing} gold instances have no prediction and count as invalid")

        report = self.aggregate([self.score_instance(record, by_id.get(record.id)) for record in gold])
        logger.info(f"Scored {report.total} instances: {report.precise_absolute} precise, "
                    f"{report.minimal_instances} minimal")
        return report

    def leaderboard_key(self, report: ScoreReport) -> Fraction:
        """排行榜只看全局最小比例"""
        return report.minimal_ratio_global.value

    def render_table(self, report: ScoreReport, decimals: int | None = None) -> str:
        """按固定列顺序输出两行制表符分隔的表格，比例以百分数显示"""
        decimals = settings.SCORE_DECIMALS if decimals is None else decimals
        digits = max(decimals - 2, 0)

        def pct(ratio: Ratio) -> str:
            return f"{float(round(ratio.value * 100, digits)):.{digits}f}"

        cost_ratio = "-" if report.cost_ratio is None else f"{float(round(report.cost_ratio, decimals)):.{decimals}f}"
        values = (
            pct(report.compile_ratio),
            str(report.precise_absolute),
            pct(report.precise_ratio),
            pct(report.positive_ratio),
            pct(report.negative_ratio),
            pct(report.pn_ratio),
            str(report.minimal_instances),
            pct(report.minimal_ratio_precise),
            pct(report.minimal_ratio_global),
            cost_ratio,
        )
        return "\t".join(TABLE_COLUMNS) + "\n" + "\t".join(values) + "\n"


scoring_service = ScoringService()
