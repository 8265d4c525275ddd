"""
命令行入口

    python -m app gen --recipe ds1.env --out ds1.jsonl
    python -m app solve --in ds1.jsonl --out ds1.solved.jsonl --workers 4
    python -m app split --in ds1.solved.jsonl --train-out train.jsonl --test-out test.jsonl
    python -m app baseline --kind re-retrieval --train train.jsonl --test test.jsonl --out preds.tsv
    python -m app score --pred preds.tsv --gold test.jsonl --out report.json
    python -m app encode --in test.jsonl --out test.tokens

每个子命令都会写出 <out>.manifest.json。日志写到 stderr，stdout 只输出评分表。
退出码：0 成功，2 用法错误，3 数据错误，4 有实例因资源上限未能证明最小。
"""
import argparse
import json
import sys
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from app import __version__
from app.core.config import settings
from app.core.exceptions import ReiError
from app.core.logger import get_logger, set_log_stream
from app.schemas.instance import InstanceRecord, SolutionRecord
from app.schemas.manifest import RunManifest
from app.schemas.prediction import Prediction
from app.schemas.recipe import DatasetRecipe
from app.services.baselines import BaselineKind, TrainCorpus, baseline_service
from app.services.dataset_io import dataset_io_service
from app.services.generator import generator_service
from app.services.regex_parser import regex_parser_service
from app.services.scoring import scoring_service
from app.services.solver import SolverCaps, solver_service

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_CAPPED = 4


# ------------------- 进程池任务（必须是模块级函数） -------------------

_worker_corpus: TrainCorpus | None = None


def _init_worker(corpus: TrainCorpus | None) -> None:
    global _worker_corpus
    _worker_corpus = corpus


def _solve_record(task: tuple[InstanceRecord, SolverCaps]) -> InstanceRecord:
    record, caps = task
    try:
        solution = solver_service.solve(record.to_instance(), caps)
    except ReiError as e:
        logger.error(f"Instance {record.id} failed: {e}")
        return record.model_copy(update={"solution": None, "error": str(e)})
    return record.model_copy(update={
        "solution": SolutionRecord(regex=solution.text, cost=solution.cost, minimal=solution.minimal),
        "error": None,
    })


def _baseline_record(task: tuple[BaselineKind, InstanceRecord]) -> Prediction:
    kind, record = task
    regex = baseline_service.predict(kind, record.to_instance(), _worker_corpus)
    return Prediction(id=record.id, text=regex_parser_service.format(regex))


def _map(func: Callable, tasks: list, workers: int, corpus: TrainCorpus | None = None) -> list:
    """按输入顺序返回结果；并行与否不影响输出"""
    if workers <= 1 or len(tasks) <= 1:
        _init_worker(corpus)
        return [func(task) for task in tasks]
    chunksize = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(corpus,)) as pool:
        return list(pool.map(func, tasks, chunksize=chunksize))


def _manifest(args: argparse.Namespace, inputs: Iterable[str], outputs: Iterable[str],
              started: float, exit_code: int, seed: int | None = None) -> None:
    parameters: dict[str, Any] = {
        key: value for key, value in sorted(vars(args).items()) if key != "handler"
    }
    manifest = RunManifest.for_files(
        subcommand=args.command,
        parameters=parameters,
        version=__version__,
        inputs=list(inputs),
        outputs=list(outputs),
        seed=seed,
        wall_clock=round(time.monotonic() - started, 3),
        exit_code=exit_code,
    )
    path = manifest.write(args.out if hasattr(args, "out") else args.train_out)
    logger.info(f"Manifest written to {path}")


# ------------------- 子命令 -------------------

def cmd_gen(args: argparse.Namespace) -> int:
    started = time.monotonic()
    if args.recipe:
        recipe = DatasetRecipe.from_file(args.recipe)
    else:
        recipe = DatasetRecipe(name=args.name, pn_sets=args.pn_sets)
    overrides = {key: getattr(args, key) for key in ("seed", "ops", "costs") if getattr(args, key) is not None}
    if overrides:
        recipe = DatasetRecipe(**{**recipe.model_dump(), **overrides})
    instances = generator_service.gen_dataset(recipe)
    dataset_io_service.write_instances(args.out, (InstanceRecord.from_instance(inst) for inst in instances))
    inputs = [args.recipe] if args.recipe else []
    _manifest(args, inputs, [args.out], started, EXIT_OK, seed=recipe.seed)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    started = time.monotonic()
    records = dataset_io_service.read_instances(args.input)
    caps = SolverCaps(max_footprints=args.caps_footprints, max_seconds=args.caps_seconds)
    solved = _map(_solve_record, [(record, caps) for record in records], args.workers)
    dataset_io_service.write_instances(args.out, solved)

    errors = sum(1 for r in solved if r.error)
    capped = sum(1 for r in solved if r.solution is not None and not r.solution.minimal)
    logger.info(f"Solved {len(solved) - errors} of {len(solved)} instances, {capped} not proven minimal")
    exit_code = EXIT_DATA if errors else EXIT_CAPPED if capped else EXIT_OK
    _manifest(args, [args.input], [args.out], started, exit_code)
    return exit_code


def cmd_baseline(args: argparse.Namespace) -> int:
    started = time.monotonic()
    kind = BaselineKind(args.kind)
    test = dataset_io_service.read_instances(args.test, verify=False)
    corpus = None
    inputs = [args.test]
    if kind is not BaselineKind.TRIVIAL:
        if not args.train:
            logger.error(f"Baseline {kind.value} needs --train")
            return EXIT_USAGE
        train = dataset_io_service.read_instances(args.train)
        corpus = TrainCorpus.from_solved(
            (record.to_instance(), regex_parser_service.parse(record.solution.regex, record.alphabet))
            for record in train if record.solution is not None
        )
        inputs.append(args.train)
    predictions = _map(_baseline_record, [(kind, record) for record in test], args.workers, corpus)
    dataset_io_service.write_predictions(args.out, predictions)
    _manifest(args, inputs, [args.out], started, EXIT_OK)
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    started = time.monotonic()
    gold = dataset_io_service.read_instances(args.gold)
    predictions = dataset_io_service.read_predictions(args.pred)
    report = scoring_service.score(predictions, gold)
    payload = report.to_dict(args.decimals)
    payload["leaderboard_key"] = payload["minimal_ratio_global"]["value"]
    Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    sys.stdout.write(scoring_service.render_table(report, args.decimals))
    _manifest(args, [args.pred, args.gold], [args.out], started, EXIT_OK)
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    started = time.monotonic()
    records = dataset_io_service.read_instances(args.input, verify=False)
    dataset_io_service.write_tokens(args.out, records)
    _manifest(args, [args.input], [args.out], started, EXIT_OK)
    return EXIT_OK


def cmd_split(args: argparse.Namespace) -> int:
    started = time.monotonic()
    records = dataset_io_service.read_instances(args.input)
    train, test = dataset_io_service.split_train_test(records, args.ratio, args.seed)
    dataset_io_service.write_instances(args.train_out, train)
    dataset_io_service.write_instances(args.test_out, test)
    _manifest(args, [args.input], [args.train_out, args.test_out], started, EXIT_OK, seed=args.seed)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rei", description="Regular expression inference toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen", help="Generate an instance file from a recipe")
    gen.add_argument("--recipe", default=None, help="KEY=VALUE recipe file")
    gen.add_argument("--name", default="ds", help="Dataset name when no recipe is given")
    gen.add_argument("--pn-sets", type=int, default=10, help="PN-sets when no recipe is given")
    gen.add_argument("--seed", type=int, default=None, help="Override the recipe seed")
    gen.add_argument("--ops", choices=["reduced", "full"], default=None, help="Override the recipe operator set")
    gen.add_argument("--costs", choices=["uniform", "random"], default=None, help="Override the recipe cost mode")
    gen.add_argument("--out", required=True, help="Instance file to write")
    gen.set_defaults(handler=cmd_gen)

    solve = subparsers.add_parser("solve", help="Annotate instances with minimal solutions")
    solve.add_argument("--in", dest="input", required=True, help="Instance file")
    solve.add_argument("--out", required=True, help="Solved instance file")
    solve.add_argument("--caps-footprints", type=int, default=settings.CAPS_FOOTPRINTS)
    solve.add_argument("--caps-seconds", type=float, default=settings.CAPS_SECONDS)
    solve.add_argument("--workers", type=int, default=settings.WORKERS)
    solve.set_defaults(handler=cmd_solve)

    baseline = subparsers.add_parser("baseline", help="Predict with a heuristic baseline")
    baseline.add_argument("--kind", choices=[k.value for k in BaselineKind], required=True)
    baseline.add_argument("--train", default=None, help="Solved training instances (retrieval baselines)")
    baseline.add_argument("--test", required=True, help="Test instances")
    baseline.add_argument("--out", required=True, help="Prediction file to write")
    baseline.add_argument("--workers", type=int, default=settings.WORKERS)
    baseline.set_defaults(handler=cmd_baseline)

    score = subparsers.add_parser("score", help="Score predictions against solved instances")
    score.add_argument("--pred", required=True, help="Prediction file")
    score.add_argument("--gold", required=True, help="Solved instance file")
    score.add_argument("--out", required=True, help="JSON report to write")
    score.add_argument("--decimals", type=int, default=settings.SCORE_DECIMALS)
    score.set_defaults(handler=cmd_score)

    encode = subparsers.add_parser("encode", help="Write model token sequences")
    encode.add_argument("--in", dest="input", required=True, help="Instance file")
    encode.add_argument("--out", required=True, help="Token file to write")
    encode.set_defaults(handler=cmd_encode)

    split = subparsers.add_parser("split", help="Split solved instances into train and test")
    split.add_argument("--in", dest="input", required=True, help="Solved instance file")
    split.add_argument("--train-out", required=True)
    split.add_argument("--test-out", required=True)
    split.add_argument("--ratio", type=float, default=settings.SPLIT_TEST_RATIO)
    split.add_argument("--seed", type=int, default=settings.SEED)
    split.set_defaults(handler=cmd_split)
    return parser


def main(argv: list[str] | None = None) -> int:
    set_log_stream(sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ReiError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
