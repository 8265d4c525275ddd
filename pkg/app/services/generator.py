"""
随机PN集合与代价函数生成

所有随机性来自 numpy 的 PCG64，种子经 SeedSequence 为每个PN集合派生独立子流，
因此同一配方与种子总是生成相同的数据集，且与生成顺序、并行度无关。
"""
from dataclasses import replace

import numpy as np

from app.core.config import settings
from app.core.exceptions import InfeasibleParametersError
from app.core.logger import get_logger
from app.models.instance import GenParams, Instance, PNSet, Scheme, count_strings
from app.models.regex import UNIFORM, CostFunction, OperatorSet
from app.schemas.recipe import DatasetRecipe

logger = get_logger(__name__)

# 单个PN集合重抽 (le, p, n) 的次数上限
MAX_PARAM_DRAWS = 100


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seed))


def _nth_string(sigma: str, length: int, index: int) -> str:
    """长度为 length 的第 index 个字符串（按 sigma 顺序的字典序）"""
    base = len(sigma)
    chars = []
    for _ in range(length):
        index, digit = divmod(index, base)
        chars.append(sigma[digit])
    return "".join(reversed(chars))


class GeneratorService:
    """实例生成服务"""

    def sample_string(self, scheme: Scheme, sigma: str, le: int, rng: np.random.Generator) -> str:
        base = len(sigma)
        if scheme is Scheme.TYPE1:
            index = int(rng.integers(0, count_strings(base, le)))
            length = 0
            while index >= base ** length:
                index -= base ** length
                length += 1
        else:
            length = int(rng.integers(0, le + 1))
            index = int(rng.integers(0, base ** length))
        return _nth_string(sigma, length, index)

    def sample_strings(self, scheme: Scheme, sigma: str, le: int, count: int,
                       rng: np.random.Generator) -> list[str]:
        """可重复地独立采样 count 个字符串，用于分布检验"""
        return [self.sample_string(scheme, sigma, le, rng) for _ in range(count)]

    def _fill(self, params: GenParams, rng: np.random.Generator) -> PNSet:
        params.validate()
        positives: list[str] = []
        taken: set[str] = set()
        while len(positives) < params.p:
            w = self.sample_string(params.scheme, params.sigma, params.le, rng)
            if w not in taken:
                taken.add(w)
                positives.append(w)
        negatives: list[str] = []
        while len(negatives) < params.n:
            w = self.sample_string(params.scheme, params.sigma, params.le, rng)
            if w not in taken:
                taken.add(w)
                negatives.append(w)
        return PNSet(tuple(positives), tuple(negatives))

    def gen_type1(self, params: GenParams, rng: np.random.Generator | None = None) -> PNSet:
        """
        在 Σ^{≤le} 上均匀采样互不相同且互不相交的 P 与 N

        Raises:
            InfeasibleParametersError: p+n 超过可用字符串数
        """
        return self._fill(replace(params, scheme=Scheme.TYPE1),
                          rng or make_rng(params.seed))

    def gen_type2(self, params: GenParams, rng: np.random.Generator | None = None) -> PNSet:
        """先均匀采样长度 0..le，再均匀采样该长度的字符串；短串权重更高"""
        return self._fill(replace(params, scheme=Scheme.TYPE2),
                          rng or make_rng(params.seed))

    def gen_pn(self, params: GenParams, rng: np.random.Generator | None = None) -> PNSet:
        if params.scheme is Scheme.TYPE1:
            return self.gen_type1(params, rng)
        return self.gen_type2(params, rng)

    def gen_cost(self, ops: OperatorSet, seed: int | np.random.Generator = 0) -> CostFunction:
        """
        为算子集内的每个算子独立采样 1..COST_RANGE_MAX 的代价

        被算子集排除的算子固定为 COST_SENTINEL
        """
        rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
        relevant = CostFunction().to_mapping(ops)
        values = {}
        for key in CostFunction().to_mapping():
            if key in relevant:
                values[key] = int(rng.integers(1, settings.COST_RANGE_MAX + 1))
            else:
                values[key] = settings.COST_SENTINEL
        return CostFunction.from_mapping(values)

    def _draw_params(self, recipe: DatasetRecipe, set_index: int, rng: np.random.Generator) -> GenParams:
        scheme = Scheme.TYPE1 if rng.random() < recipe.type1_share else Scheme.TYPE2
        le_range = recipe.le_range_type1 if scheme is Scheme.TYPE1 else recipe.le_range_type2
        available = None
        for _ in range(MAX_PARAM_DRAWS):
            le = int(rng.integers(le_range[0], le_range[1] + 1))
            p = int(rng.integers(recipe.p_range[0], recipe.p_range[1] + 1))
            n = int(rng.integers(recipe.n_range[0], recipe.n_range[1] + 1))
            available = count_strings(len(recipe.sigma), le)
            if p + n <= available:
                return GenParams(scheme, recipe.sigma, le, p, n, recipe.seed)
        raise InfeasibleParametersError(
            f"PN-set {set_index}: no feasible (le, p, n) after {MAX_PARAM_DRAWS} draws "
            f"(last le allowed {available} strings)"
        )

    def gen_instances_for_set(self, recipe: DatasetRecipe, set_index: int,
                              seed_seq: np.random.SeedSequence) -> list[Instance]:
        rng = make_rng(seed_seq)
        params = self._draw_params(recipe, set_index, rng)
        pn = self.gen_pn(params, rng)
        ops = OperatorSet.from_name(recipe.ops)
        cost_functions = [UNIFORM]
        if recipe.costs == "random":
            cost_functions.extend(self.gen_cost(ops, rng) for _ in range(recipe.random_costs_per_set))
        return [
            Instance(id=f"{recipe.name}-{set_index:05d}-{cf_index:02d}", pn=pn, cf=cf, ops=ops, sigma=recipe.sigma)
            for cf_index, cf in enumerate(cost_functions)
        ]

    def gen_dataset(self, recipe: DatasetRecipe) -> list[Instance]:
        """
        按配方生成可复现的实例列表

        Args:
            recipe: 数据集配方

        Returns:
            PN集合数 × 每集合代价函数数 个实例，按ID顺序排列
        """
        children = np.random.SeedSequence(recipe.seed).spawn(recipe.pn_sets)
        instances: list[Instance] = []
        for set_index, child in enumerate(children):
            instances.extend(self.gen_instances_for_set(recipe, set_index, child))
        logger.info(f"Generated {len(instances)} instances from {recipe.pn_sets} PN-sets "
                    f"(recipe {recipe.name}, seed {recipe.seed})")
        return instances


generator_service = GeneratorService()
