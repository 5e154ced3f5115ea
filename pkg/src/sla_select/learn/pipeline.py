"""Train one (algorithm, metric) predictor set from split dataset rows."""

from __future__ import annotations

from typing import Sequence

from .artifact import KIND_ENSEMBLE, KIND_RL, KIND_SINGLE, ModelArtifact
from .binning import BinMetric
from .data import classification_data, fit_scheme, regression_data
from .ensemble import build_ensemble
from .models import CLASSIFY, REGRESS
from .tuning import FAMILIES, grid_candidates, train_model

RL_FAMILIES = ("qlearning", "sarsa")
AUTO_FAMILY = "auto"


def train_target(
    algorithm: str,
    metric: BinMetric,
    task: str,
    train_rows: Sequence[dict],
    val_rows: Sequence[dict],
    family: str = AUTO_FAMILY,
    top_k: int = 3,
    seed: int = 0,
) -> ModelArtifact:
    """Fit predictors for one algorithm and one target metric.

    family "auto" grid-searches all five families and wraps the top-k fits
    (by validation score, across the whole candidate pool) in an ensemble;
    a named family returns its best single fit; the TD flavors train a
    Q-table on the regression target.
    """
    if task not in (CLASSIFY, REGRESS):
        raise ValueError(f"unknown task {task!r}")
    if not train_rows or not val_rows:
        raise ValueError("empty training or validation rows")

    scheme = fit_scheme(metric, train_rows)
    if family in RL_FAMILIES:
        if task != REGRESS:
            raise ValueError("TD predictors support the regression task only")
        from ..rl import TDParams, train_td

        X_train, y_train = regression_data(train_rows, metric)
        qtable = train_td(X_train, y_train, scheme, flavor=family, params=TDParams(seed=seed))
        return ModelArtifact(
            KIND_RL, algorithm, metric.value, task, qtable, bin_scheme=scheme
        )

    if task == CLASSIFY:
        train_data = classification_data(train_rows, metric, scheme)
        val_data = classification_data(val_rows, metric, scheme)
        n_classes = scheme.n_classes
    else:
        train_data = regression_data(train_rows, metric)
        val_data = regression_data(val_rows, metric)
        n_classes = None

    fit_log: list = []
    if family == AUTO_FAMILY:
        candidates = []
        for fam in FAMILIES:
            candidates.extend(
                grid_candidates(
                    fam, task, train_data, val_data, seed=seed, n_classes=n_classes, fit_log=fit_log
                )
            )
        ensemble = build_ensemble(candidates, top_k, task)
        return ModelArtifact(
            KIND_ENSEMBLE,
            algorithm,
            metric.value,
            task,
            ensemble,
            bin_scheme=scheme if task == CLASSIFY else None,
            top_k=top_k,
            fit_log=fit_log,
        )

    predictor = train_model(
        family, task, train_data, val_data, seed=seed, n_classes=n_classes, fit_log=fit_log
    )
    return ModelArtifact(
        KIND_SINGLE,
        algorithm,
        metric.value,
        task,
        predictor,
        bin_scheme=scheme if task == CLASSIFY else None,
        fit_log=fit_log,
    )
