"""
实例文件、预测文件、模型记号序列与训练/测试切分

实例文件每行一个 JSON 记录；预测文件每行 "id<TAB>regex"；
记号文件每行一个实例，记号以空格分隔。
"""
from collections.abc import Iterable
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from app.core.exceptions import (
    DataCorruptionError,
    DuplicatePredictionError,
    InfeasibleSplitError,
    MalformedFileError,
    ReiError,
)
from app.core.logger import get_logger
from app.models.regex import FULL, CostFunction, OperatorSet, cost
from app.schemas.instance import InstanceRecord, SolutionRecord
from app.schemas.prediction import Prediction
from app.services.matcher import matcher_service
from app.services.regex_parser import regex_parser_service

logger = get_logger(__name__)

CLS, POS, NEG, BOR, EOR = "[CLS]", "[POS]", "[NEG]", "[BOR]", "[EOR]"
SYMBOL_TOKENS = {"0": "ZERO", "1": "ONE"}
_TOKEN_SYMBOLS = {v: k for k, v in SYMBOL_TOKENS.items()}


def cost_token(key: str) -> str:
    """代价键对应的记号，例如 "a" -> "[COST_A]" """
    return f"[COST_{key.upper()}]"


_COST_KEYS = {cost_token(key): key for key in CostFunction().to_mapping()}


def _symbol_tokens(text: str) -> list[str]:
    return [SYMBOL_TOKENS.get(ch, ch) for ch in text]


class DatasetIOService:
    """数据集读写服务"""

    # ------------------- 实例文件 -------------------

    def write_instances(self, path: str | Path, records: Iterable[InstanceRecord]) -> int:
        count = 0
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(record.model_dump_json(exclude_none=True))
                f.write("\n")
                count += 1
        logger.info(f"Wrote {count} instance records to {path}")
        return count

    def check_record(self, record: InstanceRecord, line: int) -> None:
        """
        校验记录中的标准解：可解析、代价一致且精确

        Raises:
            DataCorruptionError: 任一不变量被破坏
        """
        solution = record.solution
        if solution is None:
            return
        try:
            inst = record.to_instance()
            regex = regex_parser_service.parse(solution.regex, inst.sigma, inst.ops)
        except ReiError as e:
            raise DataCorruptionError(f"Record {record.id}: {e}", line)
        actual = cost(regex, inst.cf)
        if actual != solution.cost:
            raise DataCorruptionError(
                f"Record {record.id}: stored cost {solution.cost} but solution costs {actual}", line
            )
        if not matcher_service.is_precise(regex, inst.pn.positives, inst.pn.negatives):
            raise DataCorruptionError(f"Record {record.id}: stored solution is not precise", line)

    def read_instances(self, path: str | Path, verify: bool = True) -> list[InstanceRecord]:
        """
        读取实例文件

        Args:
            path: 文件路径
            verify: 是否校验标准解

        Raises:
            MalformedFileError: 行无法解析
            DataCorruptionError: ID 重复或标准解不合法
        """
        records: list[InstanceRecord] = []
        seen: set[str] = set()
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    record = InstanceRecord.model_validate_json(line)
                except ValidationError as e:
                    raise MalformedFileError(f"Invalid instance record: {e.errors()[0]['msg']}", line_no)
                if record.id in seen:
                    raise DataCorruptionError(f"Duplicate instance id {record.id}", line_no)
                seen.add(record.id)
                if verify:
                    self.check_record(record, line_no)
                records.append(record)
        logger.info(f"Read {len(records)} instance records from {path}")
        return records

    # ------------------- 预测文件 -------------------

    def write_predictions(self, path: str | Path, predictions: Iterable[Prediction]) -> int:
        count = 0
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for pred in predictions:
                f.write(f"{pred.id}\t{pred.text}\n")
                count += 1
        logger.info(f"Wrote {count} predictions to {path}")
        return count

    def read_predictions(self, path: str | Path) -> list[Prediction]:
        """
        Raises:
            MalformedFileError: 行中没有制表符
            DuplicatePredictionError: 同一ID出现多次
        """
        predictions: list[Prediction] = []
        seen: set[str] = set()
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.rstrip("\r\n")
                if not line.strip():
                    continue
                if "\t" not in line:
                    raise MalformedFileError("Expected 'id<TAB>regex'", line_no)
                pred_id, text = line.split("\t", 1)
                if pred_id in seen:
                    raise DuplicatePredictionError(f"Duplicate prediction for {pred_id} at line {line_no}")
                seen.add(pred_id)
                predictions.append(Prediction(id=pred_id, text=text))
        return predictions

    # ------------------- 记号序列 -------------------

    def encode_tokens(self, record: InstanceRecord) -> list[str]:
        """
        模型输入的记号序列

        字母 0/1 写作 ZERO/ONE，空串写作 e，代价值拆成十进制数字；
        只输出算子集内算子的代价；解取规范形式并去掉根结点外层括号
        """
        tokens = [CLS]
        for marker, strings in ((POS, record.pos), (NEG, record.neg)):
            for w in strings:
                tokens.append(marker)
                tokens.extend(_symbol_tokens(w) if w else ["e"])
        inst = record.to_instance()
        for key, value in inst.cf.to_mapping(inst.ops).items():
            tokens.append(cost_token(key))
            tokens.extend(str(value))
        tokens.append(BOR)
        if record.solution is not None:
            regex = regex_parser_service.parse(record.solution.regex, inst.sigma, FULL)
            tokens.extend(_symbol_tokens(regex_parser_service.format_unwrapped(regex)))
            tokens.append(EOR)
        return tokens

    def decode_tokens(self, tokens: list[str], record_id: str, alphabet: str = "01") -> InstanceRecord:
        """
        encode_tokens 的逆变换

        算子集由出现的代价记号推断；算子集外的代价不在序列中，解码结果只含相关代价

        Raises:
            MalformedFileError: 序列结构不合法（line 为出错记号的下标）
        """
        if not tokens or tokens[0] != CLS:
            raise MalformedFileError("Token sequence must start with [CLS]", 0)
        pos: list[str] = []
        neg: list[str] = []
        costs: dict[str, int] = {}
        current: list[str] | None = None
        cost_key: str | None = None
        index = 1
        while index < len(tokens):
            token = tokens[index]
            if token == BOR:
                break
            if token in (POS, NEG):
                target = pos if token == POS else neg
                target.append("")
                current, cost_key = target, None
            elif token in _COST_KEYS:
                cost_key, current = _COST_KEYS[token], None
                costs[cost_key] = 0
            elif cost_key is not None and token.isdigit():
                costs[cost_key] = costs[cost_key] * 10 + int(token)
            elif current is not None:
                if token != "e":
                    current[-1] += _TOKEN_SYMBOLS.get(token, token)
            else:
                raise MalformedFileError(f"Unexpected token {token!r}", index)
            index += 1
        else:
            raise MalformedFileError("Missing [BOR]", index)

        full_only = {"~", "&", "-"}
        ops = "full" if full_only & set(costs) else "reduced"
        record = InstanceRecord(id=record_id, alphabet=alphabet, pos=pos, neg=neg, ops=ops, costs=costs)
        body = tokens[index + 1:]
        if body:
            if body[-1] != EOR:
                raise MalformedFileError("Solution must end with [EOR]", len(tokens) - 1)
            text = "".join(_TOKEN_SYMBOLS.get(t, t) for t in body[:-1])
            inst = record.to_instance()
            regex = regex_parser_service.parse(text, alphabet, FULL)
            record.solution = SolutionRecord(regex=regex_parser_service.format(regex), cost=cost(regex, inst.cf))
        return record

    def write_tokens(self, path: str | Path, records: Iterable[InstanceRecord]) -> int:
        count = 0
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(" ".join(self.encode_tokens(record)))
                f.write("\n")
                count += 1
        logger.info(f"Wrote {count} token sequences to {path}")
        return count

    # ------------------- 训练/测试切分 -------------------

    def split_train_test(self, records: list[InstanceRecord], ratio: float,
                         seed: int = 0) -> tuple[list[InstanceRecord], list[InstanceRecord]]:
        """
        切分训练集与测试集

        同一PN集合的所有代价变体落在同一侧，测试集中的任何解（规范形式）
        都不出现在训练集的解中。共享解的PN集合经并查集合并为一个分量，
        分量随机排序后贪心装入测试集直到达到目标规模。

        Raises:
            InfeasibleSplitError: 记录缺少解，或无法在约束下得到非空测试集
        """
        if not 0.0 <= ratio < 1.0:
            raise InfeasibleSplitError(f"Split ratio must be in [0, 1), got {ratio}")
        if ratio == 0.0 or not records:
            return list(records), []

        group_of: dict[tuple, int] = {}
        group_records: list[list[int]] = []
        owner: dict[str, int] = {}
        parent: list[int] = []

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for position, record in enumerate(records):
            if record.solution is None:
                raise InfeasibleSplitError(f"Record {record.id} has no solution")
            key = (record.alphabet, tuple(record.pos), tuple(record.neg))
            group = group_of.get(key)
            if group is None:
                group = group_of[key] = len(group_records)
                group_records.append([])
                parent.append(group)
            group_records[group].append(position)
            text = regex_parser_service.canonicalize(record.solution.regex, record.alphabet)
            if text in owner:
                a, b = find(owner[text]), find(group)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[text] = group

        components: dict[int, list[int]] = {}
        for group in range(len(group_records)):
            components.setdefault(find(group), []).extend(group_records[group])
        ordered = [components[root] for root in sorted(components)]

        target = max(1, round(ratio * len(records)))
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
        test_positions: set[int] = set()
        for index in rng.permutation(len(ordered)):
            members = ordered[int(index)]
            if len(test_positions) + len(members) <= target:
                test_positions.update(members)
            if len(test_positions) == target:
                break
        if not test_positions or len(test_positions) == len(records):
            raise InfeasibleSplitError(
                f"Cannot split {len(records)} records into a solution-disjoint test set of about {target}"
            )

        train = [r for i, r in enumerate(records) if i not in test_positions]
        test = [r for i, r in enumerate(records) if i in test_positions]
        logger.info(f"Split {len(records)} records into {len(train)} train / {len(test)} test "
                    f"across {len(ordered)} solution-disjoint components")
        return train, test


dataset_io_service = DatasetIOService()
