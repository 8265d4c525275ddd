import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.models.instance import Instance, PNSet
from app.models.regex import FULL, REDUCED, UNIFORM, CostFunction
from app.schemas.instance import InstanceRecord, SolutionRecord


@pytest.fixture
def client():
    """创建测试客户端"""
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def alternating_instance() -> Instance:
    """P={0101}, N={1000100}，最小解代价 4"""
    return Instance(id="alt", pn=PNSet(("0101",), ("1000100",)), cf=UNIFORM, ops=REDUCED)


@pytest.fixture
def weighted_instance() -> Instance:
    """变代价实例，标准解 (0.((1.(0*))*)) 代价 156"""
    cf = CostFunction(atom=20, option=8, star=3, concat=45, union=38)
    return Instance(
        id="weighted",
        pn=PNSet(("010011",), ("000000", "00011", "110010", "111010")),
        cf=cf,
        ops=REDUCED,
    )


@pytest.fixture
def mixed_instance() -> Instance:
    """P={11,0000,000}, N={ε,1,101}，全算子、均匀代价"""
    return Instance(id="mixed", pn=PNSet(("11", "0000", "000"), ("", "1", "101")), cf=UNIFORM, ops=FULL)


@pytest.fixture
def encoded_record(mixed_instance) -> InstanceRecord:
    """与模型编码示例一致的记录：只允许精简算子集，带解"""
    record = InstanceRecord.from_instance(mixed_instance, SolutionRecord(regex="((0*).(0+(1.1)))", cost=8))
    return record.model_copy(update={"ops": "reduced"})


@pytest.fixture
def full_ops_instance() -> Instance:
    """全算子均匀代价实例，标准解代价 11"""
    return Instance(
        id="full11",
        pn=PNSet(("0", "11", "011", "110", "10"), ("", "00", "000", "010", "1", "100", "101")),
        cf=UNIFORM,
        ops=FULL,
    )


@pytest.fixture
def complement_instance() -> Instance:
    """全算子变代价实例，标准解 (0+((~1).1)) 代价 52"""
    cf = CostFunction(atom=1, option=36, star=20, concat=38, union=1, complement=10, intersection=12, minus=30)
    return Instance(
        id="comp52",
        pn=PNSet(("011", "0", "1", "101"), ("", "10", "100", "11", "110")),
        cf=cf,
        ops=FULL,
    )


@pytest.fixture
def multi_string_instance() -> Instance:
    """多正例实例，标准解 (((1.(0*))*).((0.(1?))*)) 代价 11"""
    return Instance(
        id="multi11",
        pn=PNSet(("10", "000", "1101110", "1000000", "1110110", "010"), ("000110", "0110", "01101000")),
        cf=UNIFORM,
        ops=REDUCED,
    )


@pytest.fixture
def small_instances() -> list[Instance]:
    """几个可以很快解出的小实例"""
    return [
        Instance(id="s-00", pn=PNSet(("0101",), ("1000100",))),
        Instance(id="s-01", pn=PNSet(("",), ("0",))),
        Instance(id="s-02", pn=PNSet(("0", "00"), ("1", "01"))),
        Instance(id="s-03", pn=PNSet(("1", "11", "111"), ("", "0"))),
    ]
