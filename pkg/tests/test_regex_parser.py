import pytest
from hypothesis import given, settings as hyp_settings

from app.core.config import settings
from app.core.exceptions import (
    OperatorNotAllowedError,
    RegexSyntaxError,
    SymbolNotInAlphabetError,
)
from app.models.regex import (
    EMPTY_SET,
    EPSILON,
    FULL,
    REDUCED,
    UNIFORM,
    CostFunction,
    Op,
    OperatorSet,
    complement,
    concat,
    cost,
    intersect,
    iter_regexes,
    literal,
    minus,
    operators_used,
    option,
    size,
    star,
    union,
)
from app.services.regex_parser import regex_parser_service
from tests.strategies import regexes

ZERO = literal("0")
ONE = literal("1")


class TestParse:
    """具体语法解析测试"""

    def test_parse_star_of_concat(self):
        """测试带括号的星号"""
        assert regex_parser_service.parse("((0.1)*)") == star(concat(ZERO, ONE))

    def test_parse_leaves(self):
        """测试 e 与 E"""
        assert regex_parser_service.parse("e") == EPSILON
        assert regex_parser_service.parse("E") == EMPTY_SET

    def test_parse_complement_minus(self):
        """测试含补与差的表达式"""
        result = regex_parser_service.parse("(~((1?).(((0.(1?))*)-0)))")

        # 验证结果
        expected = complement(concat(option(ONE), minus(star(concat(ZERO, option(ONE))), ZERO)))
        assert result == expected

    @pytest.mark.parametrize("text, expected", [
        ("0+1.0", union(ZERO, concat(ONE, ZERO))),
        ("01*", concat(ZERO, star(ONE))),
        ("~0*", complement(star(ZERO))),
        ("0-1+0", union(minus(ZERO, ONE), ZERO)),
        ("0&1-0", minus(intersect(ZERO, ONE), ZERO)),
        ("0.1.0", concat(concat(ZERO, ONE), ZERO)),
        ("0+1+0", union(union(ZERO, ONE), ZERO)),
        ("0 1", concat(ZERO, ONE)),
        ("0~1", concat(ZERO, complement(ONE))),
        ("(0*)?", option(star(ZERO))),
    ])
    def test_precedence(self, text, expected):
        """测试优先级、左结合与并置"""
        assert regex_parser_service.parse(text) == expected

    @pytest.mark.parametrize("text, position", [
        ("", 0),
        ("((", 2),
        ("0+", 2),
        ("0)", 1),
        ("*0", 0),
    ])
    def test_syntax_errors(self, text, position):
        """测试语法错误带位置"""
        with pytest.raises(RegexSyntaxError) as exc_info:
            regex_parser_service.parse(text)
        assert exc_info.value.position == position

    def test_symbol_outside_alphabet(self):
        """测试字母表外的符号"""
        with pytest.raises(SymbolNotInAlphabetError) as exc_info:
            regex_parser_service.parse("(0.2)", "01")
        assert exc_info.value.position == 3

    def test_operator_outside_set(self):
        """测试精简算子集拒绝补"""
        with pytest.raises(OperatorNotAllowedError) as exc_info:
            regex_parser_service.parse("(0+((~1).1))", "01", REDUCED)
        assert exc_info.value.position == 5

    def test_empty_set_not_in_reduced(self):
        """测试精简算子集不含 ∅"""
        with pytest.raises(OperatorNotAllowedError):
            regex_parser_service.parse("E", "01", REDUCED)

    def test_try_parse(self):
        """测试解析失败返回 None"""
        assert regex_parser_service.try_parse("((") is None
        assert regex_parser_service.try_parse(None) is None
        assert regex_parser_service.try_parse("(~1)", "01", REDUCED) is None
        assert regex_parser_service.try_parse("(0*)") == star(ZERO)

    @pytest.mark.parametrize("text", [
        "(" * 400 + "0" + ")" * 400,
        "~" * 400 + "0",
        "0" + "*" * 400,
        "0" + ".0" * 400,
    ])
    def test_too_deep(self, text):
        """测试嵌套或语法树过深时报语法错误"""
        with pytest.raises(RegexSyntaxError):
            regex_parser_service.parse(text, "01")
        assert regex_parser_service.try_parse(text, "01") is None

    def test_depth_limit_boundary(self):
        """测试恰好达到深度上限仍可解析"""
        depth = settings.MAX_REGEX_DEPTH
        text = "(" * 9 + "0" + "*" * (depth - 1) + ")" * 9
        assert size(regex_parser_service.parse(text, "01")) == depth
        with pytest.raises(RegexSyntaxError):
            regex_parser_service.parse(text + "*", "01")


class TestFormat:
    """规范打印测试"""

    def test_format_examples(self):
        """测试打印示例"""
        assert regex_parser_service.format(star(concat(ZERO, ONE))) == "((0.1)*)"
        assert regex_parser_service.format(EMPTY_SET) == "E"
        assert regex_parser_service.format(union(ZERO, concat(complement(ONE), ONE))) == "(0+((~1).1))"

    def test_format_unwrapped(self):
        """测试去掉根结点外层括号"""
        regex = regex_parser_service.parse("(0*).(0+(1.1))")
        assert regex_parser_service.format_unwrapped(regex) == "(0*).(0+(1.1))"
        assert regex_parser_service.format_unwrapped(star(ZERO)) == "(0*)"
        assert regex_parser_service.format_unwrapped(ZERO) == "0"

    def test_canonicalize(self):
        """测试精简输入转成规范形式"""
        assert regex_parser_service.canonicalize("(10*)*.(01?)*") == "(((1.(0*))*).((0.(1?))*))"

    @hyp_settings(max_examples=500)
    @given(regexes)
    def test_round_trip(self, r):
        """测试打印后再解析得到同一棵树"""
        assert regex_parser_service.parse(regex_parser_service.format(r), "01", FULL) == r


class TestCost:
    """代价与算子测试"""

    def test_uniform_cost(self):
        """测试均匀代价"""
        assert cost(regex_parser_service.parse("((0.1)*)"), UNIFORM) == 4

    def test_weighted_cost(self):
        """测试变代价"""
        cf = CostFunction(atom=20, option=8, star=3, concat=45, union=38)
        assert cost(regex_parser_service.parse("(0.((1.(0*))*))"), cf) == 156

    def test_literal_cost_is_atom(self):
        """测试字母代价等于 atom"""
        assert cost(ONE, CostFunction(atom=7)) == 7

    def test_complement_cost(self):
        """测试含补的变代价"""
        cf = CostFunction(atom=1, option=36, star=20, concat=38, union=1, complement=10, intersection=12, minus=30)
        assert cost(regex_parser_service.parse("(0+((~1).1))"), cf) == 52

    def test_operators_used(self):
        """测试出现的结点种类"""
        assert operators_used(regex_parser_service.parse("((0.1)*)")) == {Op.LITERAL, Op.CONCAT, Op.STAR}
        assert operators_used(EPSILON) == {Op.EPSILON}
        assert operators_used(regex_parser_service.parse("(0+((~1).1))")) == {
            Op.LITERAL, Op.OR, Op.COMPLEMENT, Op.CONCAT
        }

    @given(regexes)
    def test_uniform_cost_is_size(self, r):
        """测试均匀代价等于结点数"""
        assert cost(r, UNIFORM) == size(r)

    @given(regexes)
    def test_supertree_costs_more(self, r):
        """测试父树代价严格大于子树"""
        cf = CostFunction(atom=3, option=2, star=5)
        assert cost(star(r), cf) > cost(r, cf)
        assert cost(option(r), cf) > cost(r, cf)
        assert cost(r, cf) >= cf.atom


class TestOperatorSetAndCostFunction:
    """算子集与代价函数测试"""

    def test_presets(self):
        """测试两个预设"""
        assert REDUCED.ops < FULL.ops
        assert Op.COMPLEMENT not in REDUCED
        assert Op.EPSILON in REDUCED
        assert Op.EMPTY_SET not in REDUCED
        assert OperatorSet.from_name("reduced") is REDUCED
        assert OperatorSet.from_name("FULL") is FULL
        assert REDUCED.name == "reduced"

    def test_required_operators(self):
        """测试必须开启 ε、字母、连接与并"""
        with pytest.raises(ValueError):
            OperatorSet(frozenset({Op.LITERAL, Op.CONCAT}))
        with pytest.raises(ValueError):
            OperatorSet.from_name("a,.,+")

    def test_custom_set(self):
        """测试逗号分隔的自定义算子集"""
        ops = OperatorSet.from_name("e,a,.,+")
        assert Op.STAR not in ops
        assert ops.name == "e,a,.,+"

    def test_unknown_set_name(self):
        with pytest.raises(ValueError):
            OperatorSet.from_name("tiny")

    def test_cost_must_be_positive(self):
        """测试代价必须为正"""
        with pytest.raises(ValueError):
            CostFunction(star=0)

    def test_mapping(self):
        """测试按记号导出与导入"""
        cf = CostFunction(atom=2, option=3, star=4, concat=5, union=6, complement=7, intersection=8, minus=9)
        assert list(cf.to_mapping(REDUCED)) == ["a", "?", "*", ".", "+"]
        assert list(cf.to_mapping()) == ["a", "?", "*", ".", "+", "~", "&", "-"]
        assert CostFunction.from_mapping(cf.to_mapping()) == cf

        with pytest.raises(ValueError):
            CostFunction.from_mapping({"x": 1})


class TestIterRegexes:
    """朴素枚举测试"""

    def test_counts_by_cost(self):
        """测试精简算子集下各代价的语法树个数"""
        counts: dict[int, int] = {}
        for k, _ in iter_regexes(3, REDUCED, UNIFORM, "01"):
            counts[k] = counts.get(k, 0) + 1

        # 代价1: e 0 1；代价2: 两个后缀算子；代价3: 后缀再套一层 + 两个二元算子
        assert counts == {1: 3, 2: 6, 3: 12 + 18}

    def test_costs_are_exact(self):
        """测试产出的代价与 cost() 一致"""
        cf = CostFunction(atom=2, star=1, concat=3)
        for k, r in iter_regexes(8, REDUCED, cf, "01"):
            assert cost(r, cf) == k
