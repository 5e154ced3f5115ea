"""Profiling harness: per-run records, dataset assembly, CSV stability,
and the grouped train/validation/test split."""

import numpy as np
import pytest

from sla_select.features import HardwareConfig, hardware_grid
from sla_select.harness import (
    CSV_COLUMNS,
    DESK_BUDGET_S,
    Dataset,
    build_dataset,
    profile_run,
    run_seed,
    split_dataset,
)
from sla_select.instances import Variant
from sla_select.solvers import Algorithm

from conftest import make_instance, random_instance


@pytest.fixture(scope="module")
def corpus():
    rng = np.random.default_rng(777)
    out = []
    for i in range(10):
        variant = Variant.MAX if i % 2 == 0 else Variant.MIN
        out.append(random_instance(rng, int(rng.integers(4, 14)), variant, f"c{i:02d}"))
    return out


@pytest.fixture(scope="module")
def dataset(corpus):
    return build_dataset(corpus, hardware_grid(), list(Algorithm), DESK_BUDGET_S, base_seed=5)


class TestRunSeed:
    def test_stable_and_distinct(self):
        a = run_seed(0, Algorithm.GA, "inst-1")
        assert a == run_seed(0, Algorithm.GA, "inst-1")
        assert a != run_seed(0, Algorithm.GA, "inst-2")
        assert a != run_seed(0, Algorithm.GREEDY, "inst-1")
        assert a != run_seed(1, Algorithm.GA, "inst-1")

    def test_hardware_independent_by_construction(self, corpus):
        # Same instance, two hardware rows: the stochastic solver must see
        # the same seed so only resource limits can change the outcome.
        inst = corpus[0]
        lo = profile_run(Algorithm.GA, inst, HardwareConfig(256, 8), base_seed=9)
        hi = profile_run(Algorithm.GA, inst, HardwareConfig(256, 32), base_seed=9)
        assert lo.t_s == hi.t_s
        assert lo.o_pct == hi.o_pct


class TestProfileRun:
    def test_record_fields(self, corpus):
        rec = profile_run(Algorithm.DP, corpus[0], HardwareConfig(16, 8))
        assert rec.algorithm is Algorithm.DP
        assert rec.instance_id == corpus[0].id
        assert rec.hardware == HardwareConfig(16, 8)
        assert rec.status.value == "optimal"
        assert rec.t_s > 0 and rec.m_kb >= 1
        assert rec.o_pct == 0.0

    def test_exact_solver_gap_zero_heuristic_nonnegative(self, corpus):
        hw = HardwareConfig(64, 8)
        for inst in corpus:
            assert profile_run(Algorithm.DP, inst, hw).o_pct == 0.0
            assert profile_run(Algorithm.GREEDY, inst, hw).o_pct >= 0.0

    def test_failed_run_has_absent_targets(self):
        inst = make_instance([10**9, 10**9], [1, 1], 10**9, Variant.MAX, "huge")
        rec = profile_run(Algorithm.DP, inst, HardwareConfig(4, 8))
        assert rec.status.value == "oom"
        assert rec.t_s is None and rec.m_kb is None and rec.o_pct is None

    def test_infeasible_min_row(self):
        inst = make_instance([1, 1], [1, 1], 10, Variant.MIN, "nofit")
        rec = profile_run(Algorithm.BNB, inst, HardwareConfig(4, 8))
        assert rec.status.value == "infeasible"
        assert rec.t_s is None and rec.o_pct is None


class TestBuildDataset:
    def test_full_cartesian_product(self, dataset, corpus):
        assert len(dataset) == len(corpus) * 14 * 4
        for alg in Algorithm:
            assert len(dataset.rows_for(alg)) == len(corpus) * 14

    def test_rows_sorted(self, dataset):
        key = [
            (r["algorithm"], r["instance_id"], r["ram_gb"], r["cpu_cores"])
            for r in dataset.rows
        ]
        assert key == sorted(key)

    def test_memoization_matches_direct_runs(self, dataset, corpus):
        # The harness solves once per (algorithm, instance) and replays the
        # outcome per hardware cell; spot-check against direct calls.
        rng = np.random.default_rng(0)
        grid = hardware_grid()
        for _ in range(12):
            inst = corpus[rng.integers(len(corpus))]
            hw = grid[rng.integers(len(grid))]
            alg = list(Algorithm)[rng.integers(4)]
            direct = profile_run(alg, inst, hw, DESK_BUDGET_S, base_seed=5)
            stored = next(
                r for r in dataset.rows
                if r["algorithm"] == alg.value and r["instance_id"] == inst.id
                and r["ram_gb"] == hw.ram_gb and r["cpu_cores"] == hw.cpu_cores
            )
            assert stored["status"] == direct.status.value
            assert stored["t_s"] == direct.t_s
            assert stored["m_kb"] == direct.m_kb
            assert stored["o_pct"] == direct.o_pct

    def test_duplicate_ids_rejected(self, corpus):
        with pytest.raises(ValueError, match="duplicate"):
            build_dataset([corpus[0], corpus[0]], hardware_grid()[:1], [Algorithm.GREEDY], 1.0)

    def test_ram_axis_splits_statuses(self):
        # A dynamic-programming table of ~22 GB: cells up to 16 GB go OOM,
        # larger cells fit the table but blow the desk time budget.
        inst = make_instance([10**9, 10**9], [2, 1], 10**9, Variant.MAX, "wide")
        ds = build_dataset([inst], hardware_grid(), [Algorithm.DP], DESK_BUDGET_S)
        statuses = {r["ram_gb"]: r["status"] for r in ds.rows}
        assert statuses[4] == statuses[8] == statuses[16] == "oom"
        assert statuses[32] == statuses[256] == "timeout"


class TestCsv:
    def test_round_trip_exact(self, dataset, tmp_path):
        path = tmp_path / "perf.csv"
        dataset.to_csv(path)
        again = Dataset.from_csv(path)
        assert again.rows == dataset.rows

    def test_byte_identical_reruns(self, corpus, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        build_dataset(corpus, hardware_grid(), list(Algorithm), DESK_BUDGET_S, 5).to_csv(a)
        build_dataset(corpus, hardware_grid(), list(Algorithm), DESK_BUDGET_S, 5).to_csv(b)
        assert a.read_bytes() == b.read_bytes()

    def test_header_order(self, dataset, tmp_path):
        path = tmp_path / "perf.csv"
        dataset.to_csv(path)
        assert path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)

    def test_absent_targets_are_empty_cells(self, tmp_path):
        inst = make_instance([1, 1], [1, 1], 10, Variant.MIN, "nofit")
        ds = build_dataset([inst], [HardwareConfig(4, 8)], [Algorithm.DP], 1.0)
        path = tmp_path / "one.csv"
        ds.to_csv(path)
        line = path.read_text().splitlines()[1]
        assert line.endswith("infeasible,,,")
        assert Dataset.from_csv(path).rows[0]["t_s"] is None


class TestSplit:
    def test_grouped_and_complete(self, dataset, corpus):
        train, val, test = split_dataset(dataset, (0.6, 0.2, 0.2), seed=3)
        ids = lambda d: {r["instance_id"] for r in d.rows}
        assert ids(train) | ids(val) | ids(test) == {i.id for i in corpus}
        assert not (ids(train) & ids(val))
        assert not (ids(train) & ids(test))
        assert not (ids(val) & ids(test))
        assert len(train) + len(val) + len(test) == len(dataset)

    def test_no_leakage_across_many_seeds(self, dataset):
        for seed in range(25):
            folds = split_dataset(dataset, (0.6, 0.2, 0.2), seed=seed)
            seen = set()
            for fold in folds:
                fold_ids = {r["instance_id"] for r in fold.rows}
                assert not (seen & fold_ids)
                seen |= fold_ids

    def test_deterministic_per_seed(self, dataset):
        a = split_dataset(dataset, (0.6, 0.2, 0.2), seed=11)
        b = split_dataset(dataset, (0.6, 0.2, 0.2), seed=11)
        assert all(x.rows == y.rows for x, y in zip(a, b))

    def test_bad_ratios_rejected(self, dataset):
        with pytest.raises(ValueError):
            split_dataset(dataset, (0.5, 0.2, 0.2), seed=0)

    def test_empty_fold_rejected(self, corpus):
        tiny = build_dataset(corpus[:2], hardware_grid()[:1], [Algorithm.GREEDY], 1.0)
        with pytest.raises(ValueError):
            split_dataset(tiny, (0.98, 0.01, 0.01), seed=0)
