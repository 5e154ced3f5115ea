"""Command-line interface: the full pipeline behind one binary.

Data goes to stdout (or --out files), logs to stderr.  Exit codes: 0 on
success, 2 on usage or validation errors, 3 when a decide run ends with an
empty feasible set.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .decider import RequestError, decide as run_decide, parse_request
from .features import (
    CPU_CORES_GRID,
    FEATURE_NAMES,
    MODEL_INPUT_NAMES,
    RAM_GB_GRID,
    extract_features,
    hardware_grid,
    model_input,
)
from .harness import DESK_BUDGET_S, Dataset, build_dataset, split_dataset
from .instances import GeneratorSpec, InstanceFormatError, Variant, generate_instance, load_instance, write_instance
from .learn import (
    AUTO_FAMILY,
    BinMetric,
    FAMILIES,
    ModelArtifact,
    CLASSIFY,
    REGRESS,
    RL_FAMILIES,
    classification_data,
    evaluate_classification,
    evaluate_regression,
    permutation_importance,
    regression_data,
    train_target,
)
from .solvers import Algorithm, Budget, solve_bnb, solve_dp, solve_ga, solve_greedy

log = logging.getLogger("sla_select")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

# The hash covers everything that shapes output *content*; destination paths
# and log verbosity do not.
_SKIP_HASH_KEYS = {"func", "verbose", "quiet", "config", "out"}


def _config_hash(args: argparse.Namespace) -> str:
    payload = {
        k: v for k, v in sorted(vars(args).items()) if k not in _SKIP_HASH_KEYS and not callable(v)
    }
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _metadata(args: argparse.Namespace) -> dict:
    meta = {
        "tool": "sla-select",
        "version": __version__,
        "subcommand": args.subcommand,
        "config_hash": _config_hash(args),
    }
    if hasattr(args, "seed"):
        meta["seed"] = args.seed
    return meta


def _write_sidecar(out_path: Path, meta: dict) -> None:
    sidecar = out_path.with_name(out_path.name + ".meta.json")
    sidecar.write_text(json.dumps(meta, sort_keys=True, separators=(",", ":")) + "\n")


def _ensure_parent(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit_json(document: dict, out: str | None) -> None:
    text = json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"
    if out:
        _ensure_parent(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_config(path: str) -> dict:
    data = Path(path).read_bytes()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        return tomllib.loads(data.decode())
    return json.loads(data)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


# ------------------------------------------------------------ subcommands


def cmd_gen(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ids = []
    for i in range(args.count):
        spec = GeneratorSpec(
            n=args.n,
            capacity_fraction=args.capacity_fraction,
            correlation=args.correlation,
            noise_sigma=args.noise_sigma,
            weight_max=args.weight_max,
            seed=args.seed + i,
            variant=Variant(args.variant),
        )
        instance = generate_instance(spec)
        write_instance(instance, out_dir / f"{instance.id}.txt")
        ids.append(instance.id)
        log.info("wrote %s", out_dir / f"{instance.id}.txt")
    manifest = {"meta": _metadata(args), "instances": ids}
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, separators=(",", ":")) + "\n"
    )
    return EXIT_OK


_SOLVE_FNS = {
    Algorithm.GREEDY: lambda inst, budget, seed: solve_greedy(inst, budget),
    Algorithm.DP: lambda inst, budget, seed: solve_dp(inst, budget),
    Algorithm.BNB: lambda inst, budget, seed: solve_bnb(inst, budget),
    Algorithm.GA: lambda inst, budget, seed: solve_ga(inst, budget, seed=seed),
}


def cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    budget = Budget(time_limit_s=args.time_limit, mem_limit_kb=args.mem_limit_kb)
    outcome = _SOLVE_FNS[Algorithm(args.alg)](instance, budget, args.seed)
    document = outcome.to_dict()
    document["instance_id"] = instance.id
    document["algorithm"] = args.alg
    document["meta"] = _metadata(args)
    _emit_json(document, args.out)
    return EXIT_OK


def cmd_features(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    row = extract_features(instance)
    print(",".join(FEATURE_NAMES))
    print(",".join(repr(v) for v in row.to_array().tolist()))
    log.info("meta %s", json.dumps(_metadata(args), sort_keys=True))
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    in_dir = Path(args.instances)
    paths = sorted(in_dir.glob("*.txt"))
    if not paths:
        raise FileNotFoundError(f"no instance files (*.txt) under {in_dir}")
    instances = [load_instance(p) for p in paths]
    algorithms = [Algorithm(a) for a in args.algs.split(",") if a]
    grid = hardware_grid(_int_list(args.ram_gb), _int_list(args.cpu_cores))
    dataset = build_dataset(instances, grid, algorithms, args.time_limit, args.seed)
    out_path = _ensure_parent(args.out)
    dataset.to_csv(out_path)
    _write_sidecar(out_path, _metadata(args))
    log.info("wrote %d rows to %s", len(dataset), out_path)
    return EXIT_OK


def _split_for_train(args: argparse.Namespace, dataset: Dataset):
    return split_dataset(dataset, (0.6, 0.2, 0.2), seed=args.split_seed)


def cmd_train(args: argparse.Namespace) -> int:
    dataset = Dataset.from_csv(args.dataset)
    train_ds, val_ds, _ = _split_for_train(args, dataset)
    algorithm = Algorithm(args.alg)
    artifact = train_target(
        algorithm.value,
        BinMetric(args.metric),
        args.task,
        train_ds.rows_for(algorithm),
        val_ds.rows_for(algorithm),
        family=args.family,
        top_k=args.top_k,
        seed=args.seed,
    )
    artifact.meta = _metadata(args)
    artifact.save(_ensure_parent(args.out))
    _write_sidecar(Path(args.out), artifact.meta)
    log.info("saved %s model for %s/%s to %s", artifact.kind, args.alg, args.metric, args.out)
    return EXIT_OK


def _eval_data(artifact: ModelArtifact, dataset: Dataset):
    rows = dataset.rows_for(Algorithm(artifact.algorithm))
    if not rows:
        raise ValueError(f"dataset has no rows for algorithm {artifact.algorithm!r}")
    metric = BinMetric(artifact.metric)
    if artifact.task == CLASSIFY:
        return classification_data(rows, metric, artifact.bin_scheme)
    return regression_data(rows, metric)


def cmd_eval(args: argparse.Namespace) -> int:
    artifact = ModelArtifact.load(args.model)
    dataset = Dataset.from_csv(args.dataset)
    X, y = _eval_data(artifact, dataset)
    pred = artifact.predict(X)
    if artifact.task == CLASSIFY:
        metrics = evaluate_classification(pred, y)
    else:
        metrics = evaluate_regression(pred, y)
    document = {
        "algorithm": artifact.algorithm,
        "metric": artifact.metric,
        "task": artifact.task,
        "kind": artifact.kind,
        "rows": int(len(y)),
        "scores": metrics,
        "meta": _metadata(args),
    }
    _emit_json(document, args.out)
    return EXIT_OK


def cmd_importance(args: argparse.Namespace) -> int:
    artifact = ModelArtifact.load(args.model)
    dataset = Dataset.from_csv(args.dataset)
    X, y = _eval_data(artifact, dataset)
    ranking = permutation_importance(
        artifact.predict,
        X,
        y,
        artifact.task,
        repeats=args.repeats,
        seed=args.seed,
        feature_names=MODEL_INPUT_NAMES,
    )
    document = {
        "algorithm": artifact.algorithm,
        "metric": artifact.metric,
        "repeats": args.repeats,
        "ranking": [{"feature": name, "score": score} for name, score in ranking[: args.top]],
        "meta": _metadata(args),
    }
    _emit_json(document, args.out)
    return EXIT_OK


def _predictions_from_models(models_dir: Path, request) -> dict[str, dict[str, float | None]]:
    instance = load_instance(request.instance_path)
    if instance.variant is not request.variant:
        raise RequestError("variant", f"instance file is {instance.variant.value}, request says {request.variant.value}")
    x = model_input(extract_features(instance), request.hardware)
    predictions: dict[str, dict[str, float | None]] = {}
    for algorithm in Algorithm:
        preds: dict[str, float | None] = {}
        found = False
        for metric in BinMetric:
            path = models_dir / f"{algorithm.value}-{metric.value}.json"
            if not path.exists():
                preds[PREDICTION_KEY_FOR[metric]] = None
                continue
            artifact = ModelArtifact.load(path)
            if artifact.task != REGRESS:
                raise ValueError(f"{path} is not a regression model")
            preds[PREDICTION_KEY_FOR[metric]] = float(artifact.predict(x[None, :])[0])
            found = True
        if found:
            predictions[algorithm.value] = preds
    if not predictions:
        raise FileNotFoundError(f"no model files matching <alg>-<metric>.json under {models_dir}")
    return predictions


PREDICTION_KEY_FOR = {
    BinMetric.TIME: "t_s",
    BinMetric.GAP: "o_pct",
    BinMetric.MEMORY: "m_kb",
}


def cmd_decide(args: argparse.Namespace) -> int:
    request = parse_request(json.loads(Path(args.request).read_text()))
    if args.predictions:
        raw = json.loads(Path(args.predictions).read_text())
        predictions = {
            alg: {key: raw[alg].get(key) for key in ("t_s", "o_pct", "m_kb")} for alg in raw
        }
    else:
        predictions = _predictions_from_models(Path(args.models), request)
    report = run_decide(predictions, request.thresholds, request.weights, request.mode)
    document = report.to_json_dict()
    document["meta"] = _metadata(args)
    _emit_json(document, args.out)
    if not report.feasible:
        log.warning("no algorithm satisfies the SLA; negotiation required")
        return EXIT_INFEASIBLE
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        help="TOML or JSON config file; flags win over config values",
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging"
    )
    common.add_argument(
        "-q", "--quiet", action="store_true", default=argparse.SUPPRESS, help="errors only"
    )
    parser = argparse.ArgumentParser(
        prog="sla-select",
        description="SLA-aware algorithm selection for 0-1 knapsack solvers",
        parents=[common],
    )
    parser.set_defaults(config=None, verbose=False, quiet=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="generate instances", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--capacity-fraction", type=float, default=0.5)
    p.add_argument("--correlation", type=float, default=0.0)
    p.add_argument("--noise-sigma", type=float, default=10.0)
    p.add_argument("--weight-max", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=[v.value for v in Variant], default="max")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run one solver on one instance", parents=[common])
    p.add_argument("--alg", choices=[a.value for a in Algorithm], required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--time-limit", type=float, default=300.0)
    p.add_argument("--mem-limit-kb", type=int, default=4 * 1024 * 1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("features", help="print an instance's feature row", parents=[common])
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("profile", help="profile algorithms over a hardware grid", parents=[common])
    p.add_argument("--instances", required=True, help="directory of instance .txt files")
    p.add_argument("--algs", default=",".join(a.value for a in Algorithm))
    p.add_argument("--out", required=True)
    p.add_argument("--time-limit", type=float, default=DESK_BUDGET_S)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ram-gb", default=",".join(str(r) for r in RAM_GB_GRID))
    p.add_argument("--cpu-cores", default=",".join(str(c) for c in CPU_CORES_GRID))
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("train", help="train predictors for one algorithm/metric", parents=[common])
    p.add_argument("--dataset", required=True)
    p.add_argument("--alg", choices=[a.value for a in Algorithm], required=True)
    p.add_argument("--metric", choices=[m.value for m in BinMetric], required=True)
    p.add_argument("--task", choices=[CLASSIFY, REGRESS], required=True)
    p.add_argument("--family", choices=(AUTO_FAMILY,) + FAMILIES + RL_FAMILIES, default=AUTO_FAMILY)
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split-seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score a model on a dataset", parents=[common])
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("importance", help="permutation feature importance", parents=[common])
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("decide", help="check SLA compliance and rank algorithms", parents=[common])
    p.add_argument("--request", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--models", help="directory of <alg>-<metric>.json regression models")
    group.add_argument("--predictions", help="JSON file of per-algorithm predicted metrics")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decide)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    config_path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            config_path = argv[i + 1]
        elif arg.startswith("--config="):
            config_path = arg.split("=", 1)[1]
    if config_path is None:
        return
    subcommand = next((a for a in argv if not a.startswith("-") and a != config_path), None)
    config = _load_config(config_path)
    if subcommand is None or subcommand not in config:
        return
    section = config[subcommand]
    if not isinstance(section, dict):
        raise ValueError(f"config section {subcommand!r} must be a table/object")
    # argparse stores --foo-bar as foo_bar
    sub_parser = None
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            sub_parser = action.choices.get(subcommand)
    if sub_parser is None:
        return
    valid = {a.dest for a in sub_parser._actions}
    normalized = {k.replace("-", "_"): v for k, v in section.items()}
    unknown = sorted(set(normalized) - valid)
    if unknown:
        raise ValueError(f"unknown config keys for {subcommand!r}: {', '.join(unknown)}")
    sub_parser.set_defaults(**normalized)
    # A config-supplied value satisfies "required" flags.
    for action in sub_parser._actions:
        if action.dest in normalized:
            action.required = False


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError) as exc:
        print(f"sla-select: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InstanceFormatError, RequestError) as exc:
        print(f"sla-select: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ValueError, KeyError) as exc:
        print(f"sla-select: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
