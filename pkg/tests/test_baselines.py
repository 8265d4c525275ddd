import pytest

from app.core.exceptions import DataCorruptionError
from app.models.instance import Instance, PNSet
from app.models.regex import FULL, REDUCED, UNIFORM, cost
from app.services.baselines import BaselineKind, TrainCorpus, baseline_service
from app.services.generator import generator_service, make_rng
from app.services.matcher import matcher_service
from app.services.regex_parser import regex_parser_service
from app.models.instance import GenParams, Scheme

parse = regex_parser_service.parse


def corpus_of(*items: tuple[Instance, str]) -> TrainCorpus:
    return TrainCorpus.from_solved((inst, parse(text)) for inst, text in items)


class TestTrivial:
    """平凡正则测试"""

    @pytest.mark.parametrize("positives, expected", [
        (("0101",), "(0.(1.(0.1)))"),
        (("",), "e"),
        (("11", "0000", "000"), "((1.1)+((0.(0.(0.0)))+(0.(0.0))))"),
        ((), "E"),
    ])
    def test_examples(self, positives, expected):
        """测试右嵌套的并与连接"""
        inst = Instance(id="t", pn=PNSet(positives, ("1",)), ops=FULL)
        assert str(baseline_service.trivial(inst)) == expected

    def test_always_precise(self):
        """测试随机生成的实例上平凡正则总是精确"""
        rng = make_rng(5)
        for index in range(100):
            scheme = Scheme.TYPE1 if index % 2 else Scheme.TYPE2
            pn = generator_service.gen_pn(GenParams(scheme, "01", 5, 6, 6), rng)
            regex = baseline_service.trivial(Instance(id=f"r{index}", pn=pn))
            assert matcher_service.is_precise(regex, pn.positives, pn.negatives)

    def test_trivial_cost_matches_bound(self, mixed_instance):
        assert cost(baseline_service.trivial(mixed_instance), UNIFORM) == 17


class TestPNRetrieval:
    """PN检索测试"""

    def test_identity(self, alternating_instance):
        """测试测试实例与训练实例相同时取其解"""
        other = Instance(id="other", pn=PNSet(("1",), ("0",)))
        corpus = corpus_of((other, "1"), (alternating_instance, "((0.1)*)"))
        assert str(baseline_service.pn_retrieval(alternating_instance, corpus)) == "((0.1)*)"

    def test_cost_tie_break(self):
        """测试重叠相同时取代价较低的解"""
        corpus = corpus_of(
            (Instance(id="c9", pn=PNSet(("0",), ("1",))), "(0.(e.(e.(e.e))))"),
            (Instance(id="c7", pn=PNSet(("0",), ("11",))), "(0.(e.(e.e)))"),
        )
        inst = Instance(id="test", pn=PNSet(("0",), ("00",)))
        result = baseline_service.pn_retrieval(inst, corpus)

        # 验证结果
        assert str(result) == "(0.(e.(e.e)))"
        assert cost(result, inst.cf) == 7

    def test_skips_disallowed_operators(self):
        """测试跳过测试实例算子集不允许的解"""
        corpus = corpus_of((Instance(id="full", pn=PNSet(("0",), ("1",)), ops=FULL), "(~1)"))
        inst = Instance(id="test", pn=PNSet(("0",), ("1",)), ops=REDUCED)
        assert str(baseline_service.pn_retrieval(inst, corpus)) == "0"


class TestRERetrieval:
    """正则检索测试"""

    def test_epsilon_only_corpus(self):
        """测试语料只有 ε 时仍返回 ε"""
        corpus = corpus_of((Instance(id="eps", pn=PNSet(("",), ("0",))), "e"))
        inst = Instance(id="test", pn=PNSet(("0",), ("",)))
        result = baseline_service.re_retrieval(inst, corpus)

        # 验证结果
        assert str(result) == "e"
        assert baseline_service.pn_ratio(inst, result) == 0

    def test_precise_regex_wins(self, alternating_instance):
        corpus = corpus_of(
            (Instance(id="a", pn=PNSet(("0",), ("1",))), "0"),
            (Instance(id="b", pn=PNSet(("01",), ("0",))), "((0.1)*)"),
        )
        result = baseline_service.re_retrieval(alternating_instance, corpus)
        assert baseline_service.pn_ratio(alternating_instance, result) == 1

    def test_returns_corpus_argmax(self):
        """测试返回值的 PN Ratio 是语料中最高的"""
        rng = make_rng(8)
        solved = []
        for index in range(30):
            pn = generator_service.gen_pn(GenParams(Scheme.TYPE1, "01", 3, 2, 2), rng)
            inst = Instance(id=f"train-{index}", pn=pn)
            solved.append((inst, baseline_service.trivial(inst)))
        corpus = TrainCorpus.from_solved(solved)

        for index in range(10):
            pn = generator_service.gen_pn(GenParams(Scheme.TYPE2, "01", 3, 3, 3), rng)
            inst = Instance(id=f"test-{index}", pn=pn)
            result = baseline_service.re_retrieval(inst, corpus)
            best = max(baseline_service.pn_ratio(inst, r) for r in corpus.regexes.values())
            assert baseline_service.pn_ratio(inst, result) == best


class TestCorpus:
    """训练语料测试"""

    def test_rejects_imprecise_solution(self):
        inst = Instance(id="bad", pn=PNSet(("0",), ("1",)))
        with pytest.raises(DataCorruptionError):
            TrainCorpus.from_solved([(inst, parse("1"))])

    def test_distinct_regexes(self):
        corpus = corpus_of(
            (Instance(id="a", pn=PNSet(("0",), ("1",))), "0"),
            (Instance(id="b", pn=PNSet(("0",), ("11",))), "0"),
        )
        assert len(corpus) == 2
        assert list(corpus.regexes) == ["0"]

    def test_retrieval_requires_corpus(self, alternating_instance):
        """测试检索基线需要非空语料"""
        with pytest.raises(ValueError):
            baseline_service.predict(BaselineKind.PN_RETRIEVAL, alternating_instance)
        with pytest.raises(ValueError):
            baseline_service.predict(BaselineKind.RE_RETRIEVAL, alternating_instance, TrainCorpus([]))

    def test_trivial_needs_no_corpus(self, alternating_instance):
        assert str(baseline_service.predict(BaselineKind.TRIVIAL, alternating_instance)) == "(0.(1.(0.1)))"
