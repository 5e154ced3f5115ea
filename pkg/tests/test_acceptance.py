"""Release acceptance gate.

Ten end-to-end checks over the whole pipeline: profiling shape and runtime,
the demo decision replay, exact-solver agreement with enumeration, the greedy
guarantee, gap and metric hand values, ensemble algebra, learning sanity,
TD-learning invariants, and byte-level reproducibility.  Each check records
one PASS/FAIL line that conftest echoes after the run.
"""

from __future__ import annotations

import itertools
import json
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, brute_force_max, brute_force_min, make_instance
from sla_select.cli import main as cli_main
from sla_select.decider import Mode, SlaThresholds, decide
from sla_select.features import hardware_grid
from sla_select.harness import build_dataset, split_dataset
from sla_select.instances import GeneratorSpec, Variant, generate_instance
from sla_select.learn import (
    CLASSIFY,
    GRIDS,
    REGRESS,
    BinMetric,
    Ensemble,
    build_ensemble,
    ensemble_predict,
    evaluate_classification,
    evaluate_regression,
    grid_candidates,
    regression_data,
    time_scheme,
    train_model,
)
from sla_select.rl import QLEARNING, SARSA, TDParams, train_td
from sla_select.solvers import (
    Algorithm,
    Budget,
    SolveStatus,
    optimality_gap,
    solve_bnb,
    solve_dp,
    solve_greedy,
)

DATA = Path(__file__).parent / "data"

# Generous enough that every n <= 20 instance solves to completion.
GENEROUS = Budget(time_limit_s=3000.0, mem_limit_kb=16 * 1024 * 1024)


def _record(num: int, label: str, ok: bool) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {label}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@contextmanager
def criterion(num: int, label: str):
    try:
        yield
    except BaseException:
        _record(num, label, False)
        raise
    _record(num, label, True)


@pytest.fixture(scope="module")
def grid14():
    return hardware_grid()


@pytest.fixture(scope="module")
def corpus200():
    """200 max-variant instances up to n = 1000."""
    sizes = [20] * 48 + [50] * 48 + [100] * 48 + [200] * 48 + [1000] * 8
    out = []
    for i, n in enumerate(sizes):
        spec = GeneratorSpec(
            n=n,
            capacity_fraction=0.5,
            correlation=0.0,
            noise_sigma=10.0,
            weight_max=1000,
            seed=7000 + i,
        )
        out.append(generate_instance(spec))
    return out


@pytest.fixture(scope="module")
def batch500():
    """500 random (weights, profits, capacity) tuples with n <= 20, sized so
    exhaustive enumeration stays cheap."""
    rng = np.random.default_rng(20260822)
    out = []
    for _ in range(500):
        n = int(rng.integers(2, 21))
        weights = tuple(int(w) for w in rng.integers(1, 101, size=n))
        profits = tuple(int(p) for p in rng.integers(1, 101, size=n))
        capacity = max(1, int(float(rng.uniform(0.2, 0.8)) * sum(weights)))
        out.append((weights, profits, capacity))
    return out


@pytest.fixture(scope="module")
def small_ds(grid14):
    """A profiled dataset over 10 small mixed-variant instances and all four
    algorithms, used by the ensemble and split checks."""
    instances = []
    for i in range(10):
        spec = GeneratorSpec(
            n=12 + (i % 5) * 2,
            capacity_fraction=0.5,
            correlation=0.0,
            noise_sigma=10.0,
            weight_max=100,
            seed=400 + i,
            variant=Variant.MAX if i % 2 == 0 else Variant.MIN,
        )
        instances.append(generate_instance(spec))
    return build_dataset(instances, grid14, list(Algorithm), base_seed=1)


def test_criterion_1_profile_shape_and_runtime(corpus200, grid14):
    with criterion(1, "2800 profile rows per algorithm on 200 instances x 14 configs, under 30 min"):
        algs = [Algorithm.GREEDY, Algorithm.DP, Algorithm.BNB]
        start = time.monotonic()
        dataset = build_dataset(corpus200, grid14, algs, budget_s=5.0, base_seed=0)
        elapsed = time.monotonic() - start
        assert len(grid14) == 14
        for alg in algs:
            assert len(dataset.rows_for(alg)) == 200 * 14 == 2800
        assert len(dataset) == 3 * 2800
        assert elapsed < 1800.0, f"profiling took {elapsed:.1f}s"


def test_criterion_2_demo_prediction_replay():
    with criterion(2, "demo predictions: all 18 compliance flags and feasible {bnb, ga} exact"):
        predictions = json.loads((DATA / "demo_predictions.json").read_text())
        report = decide(predictions, SlaThresholds(100.0, 3.5, 20000.0), mode=Mode.STRICT)
        expected = {
            "greedy": {"time": True, "gap": True, "memory": False},
            "dp": {"time": False, "gap": True, "memory": False},
            "bnb": {"time": True, "gap": True, "memory": True},
            "gurobi": {"time": True, "gap": True, "memory": False},
            "ortools": {"time": True, "gap": True, "memory": False},
            "ga": {"time": True, "gap": True, "memory": True},
        }
        got = {name: rep.flags for name, rep in report.algorithms.items()}
        assert got == expected
        assert report.feasible == ["bnb", "ga"]


def test_criterion_3_exact_solvers_match_enumeration(batch500):
    with criterion(3, "DP, completed BnB, and enumeration agree on 500 instances (n <= 20), under 1 min"):
        start = time.monotonic()
        for weights, profits, capacity in batch500:
            opt_max = brute_force_max(weights, profits, capacity)
            inst = make_instance(weights, profits, capacity)
            for solve in (solve_dp, solve_bnb):
                out = solve(inst, GENEROUS)
                assert out.status is SolveStatus.OPTIMAL
                assert out.value == opt_max
            opt_min = brute_force_min(weights, profits, capacity)
            assert opt_min is not None
            inst_min = make_instance(weights, profits, capacity, Variant.MIN)
            for solve in (solve_dp, solve_bnb):
                out = solve(inst_min, GENEROUS)
                assert out.status is SolveStatus.OPTIMAL
                assert out.value == opt_min
        elapsed = time.monotonic() - start
        assert elapsed < 60.0, f"agreement sweep took {elapsed:.1f}s"


def test_criterion_4_greedy_half_guarantee(batch500):
    with criterion(4, "greedy with best-item rescue reaches >= 1/2 optimum on all 500 max instances"):
        for weights, profits, capacity in batch500:
            opt = brute_force_max(weights, profits, capacity)
            out = solve_greedy(make_instance(weights, profits, capacity), GENEROUS)
            assert out.status is SolveStatus.FEASIBLE
            assert out.value <= opt
            assert 2 * out.value >= opt


def test_criterion_5_gap_identity_and_hand_values():
    with criterion(5, "gap is zero exactly at the reference; hand values within 1e-4"):
        for value in (1, 7, 123, 10**6):
            assert optimality_gap(value, value, Variant.MAX) == 0.0
            assert optimality_gap(value, value, Variant.MIN) == 0.0
        assert abs(optimality_gap(5, 6, Variant.MAX) - 16.6667) <= 1e-4
        assert abs(optimality_gap(8, 6, Variant.MIN) - 33.3333) <= 1e-4


def test_criterion_6_metric_hand_values():
    with criterion(6, "regression/classification metric hand values within 1e-4; perfect scores exact"):
        reg = evaluate_regression(np.array([1.0, 2.0, 4.0]), np.array([1.0, 2.0, 3.0]))
        assert abs(reg["rmse"] - 0.5774) <= 1e-4
        assert abs(reg["r2"] - 0.5) <= 1e-4
        cls = evaluate_classification(np.array([0, 0, 1, 1]), np.array([0, 0, 1, 0]))
        assert abs(cls["accuracy"] - 0.75) <= 1e-4
        assert abs(cls["f1_macro"] - 0.7333) <= 1e-4
        perfect = evaluate_regression(np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.0, 3.0]))
        assert perfect["rmse"] == 0.0
        assert perfect["r2"] == 1.0


def _regression_pool(train_ds, val_ds, alg, metric):
    train = regression_data(train_ds.rows_for(alg), metric)
    val = regression_data(val_ds.rows_for(alg), metric)
    pool = []
    for family in GRIDS:
        pool.extend(grid_candidates(family, REGRESS, train, val, seed=0))
    assert len(pool) == 29
    return pool, train[0]


def test_criterion_7_ensemble_algebra(small_ds):
    with criterion(7, "ensemble mean identity <= 1e-12, all 27 vote patterns, top-3/5/7 nesting"):
        train_ds, val_ds, _ = split_dataset(small_ds, seed=0)
        targets = [(Algorithm.GA, BinMetric.TIME), (Algorithm.GREEDY, BinMetric.GAP)]
        for alg, metric in targets:
            pool, X_train = _regression_pool(train_ds, val_ds, alg, metric)
            e3 = build_ensemble(pool, 3, REGRESS)
            e5 = build_ensemble(pool, 5, REGRESS)
            e7 = build_ensemble(pool, 7, REGRESS)
            s3 = {id(m) for m in e3.members}
            s5 = {id(m) for m in e5.members}
            s7 = {id(m) for m in e7.members}
            assert s3 <= s5 <= s7

            rng = np.random.default_rng(99)
            lo, hi = X_train.min(axis=0), X_train.max(axis=0)
            X = lo + (hi - lo) * rng.random((1000, X_train.shape[1]))
            pred = ensemble_predict(e7, X)
            manual = np.mean([m.predict(X) for m in e7.members], axis=0)
            assert np.abs(pred - manual).max() <= 1e-12

        class Const:
            def __init__(self, label, score):
                self.task = CLASSIFY
                self.val_score = score
                self._label = label

            def predict(self, X):
                return np.full(X.shape[0], self._label)

        X1 = np.zeros((1, 2))
        for votes in itertools.product([0, 1, 2], repeat=3):
            members = [Const(c, s) for s, c in zip([0.9, 0.8, 0.7], votes)]
            got = int(ensemble_predict(Ensemble(task=CLASSIFY, members=members), X1)[0])
            counts = {c: votes.count(c) for c in set(votes)}
            top = max(counts.values())
            tied = {c for c, k in counts.items() if k == top}
            if len(tied) == 1:
                assert got == tied.pop(), votes
            else:
                assert got == next(c for c in votes if c in tied), votes


def test_criterion_8_learning_sanity(small_ds):
    with criterion(8, "linear R^2 >= 0.99, tree training accuracy 1.0, leak-free split over 100 seeds"):
        rng = np.random.default_rng(321)
        X = rng.normal(size=(120, 6))
        coef = rng.normal(size=6)
        y = X @ coef + 3.0
        tp = train_model("linear", REGRESS, (X[:90], y[:90]), (X[90:], y[90:]), seed=0)
        assert evaluate_regression(tp.predict(X), y)["r2"] >= 0.99

        Xc = rng.normal(size=(100, 4))
        yc = (Xc[:, 1] > 0.0).astype(int)
        tc = train_model("tree", CLASSIFY, (Xc, yc), (Xc, yc), seed=0, n_classes=2)
        assert evaluate_classification(tc.predict(Xc), yc)["accuracy"] == 1.0

        all_ids = set(small_ds.instance_ids())
        for seed in range(100):
            folds = [set(fold.instance_ids()) for fold in split_dataset(small_ds, seed=seed)]
            assert folds[0] | folds[1] | folds[2] == all_ids
            assert not (folds[0] & folds[1] or folds[0] & folds[2] or folds[1] & folds[2])


def test_criterion_9_td_invariants():
    with criterion(9, "gamma=0 flavors coincide; |Q| <= rmax/(1-gamma) over 1e5 updates"):
        rng = np.random.default_rng(2718)
        X = rng.normal(size=(200, 24)) * np.linspace(1.0, 40.0, 24)
        y = rng.uniform(0.1, 150.0, size=200)
        scheme = time_scheme()

        shared = TDParams(alpha=0.2, gamma=0.0, epsilon=0.1, episodes=30, seed=11)
        ql = train_td(X, y, scheme, flavor=QLEARNING, params=shared)
        sa = train_td(X, y, scheme, flavor=SARSA, params=shared)
        assert np.array_equal(ql.table, sa.table)

        params = TDParams(alpha=0.1, gamma=0.9, epsilon=0.1, episodes=503, seed=5)
        assert params.episodes * (len(y) - 1) >= 100_000
        q = train_td(X, y, scheme, flavor=QLEARNING, params=params)
        spread = float(y.max() - y.min())
        rmax = float(np.abs(q.midpoints[None, :] - y[:, None]).max()) / spread
        assert np.abs(q.table).max() <= rmax / (1.0 - params.gamma) + 1e-9


def _run_pipeline(workspace: Path) -> tuple[dict[str, bytes], int]:
    instances = workspace / "inst"
    models = workspace / "models"
    models.mkdir(exist_ok=True)
    assert cli_main(["gen", "--n", "12", "--count", "6", "--seed", "3", "--out", str(instances)]) == 0
    assert cli_main(["profile", "--instances", str(instances), "--out", str(workspace / "perf.csv")]) == 0
    for metric in ("time", "gap", "mem"):
        code = cli_main(
            [
                "train",
                "--dataset", str(workspace / "perf.csv"),
                "--alg", "ga",
                "--metric", metric,
                "--task", "regress",
                "--family", "knn",
                "--out", str(models / f"ga-{metric}.json"),
            ]
        )
        assert code == 0
    request = {
        "problem_type": "knapsack01",
        "variant": "max",
        "instance_path": str(sorted(instances.glob("*.txt"))[0]),
        "hardware": {"ram_gb": 16, "cpu_cores": 8},
        "sla": {"t_max_s": 100.0, "o_max_pct": 50.0, "m_max_kb": 20000.0},
        "weights": {"time": 1.0, "gap": 1.0, "memory": 1.0},
        "mode": "strict",
    }
    (workspace / "request.json").write_text(json.dumps(request))
    code = cli_main(
        [
            "decide",
            "--request", str(workspace / "request.json"),
            "--models", str(models),
            "--out", str(workspace / "report.json"),
        ]
    )
    assert code in (0, 3)
    artifacts = sorted(
        [
            *instances.glob("*.txt"),
            instances / "manifest.json",
            workspace / "perf.csv",
            workspace / "perf.csv.meta.json",
            *models.glob("*.json"),
            workspace / "report.json",
        ]
    )
    return {str(p.relative_to(workspace)): p.read_bytes() for p in artifacts}, code


def test_criterion_10_pipeline_reproducibility(tmp_path):
    with criterion(10, "pipeline rerun with one config hash is byte-identical (CSV, models, report)"):
        first, code_first = _run_pipeline(tmp_path)
        second, code_second = _run_pipeline(tmp_path)
        assert code_first == code_second
        assert sorted(first) == sorted(second)
        for name in first:
            assert first[name] == second[name], f"{name} changed between runs"
        meta = json.loads(first["perf.csv.meta.json"])
        meta_again = json.loads(second["perf.csv.meta.json"])
        assert meta["config_hash"] == meta_again["config_hash"]
