"""Permutation feature importance."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .models import CLASSIFY
from .tuning import score_predictions


def permutation_importance(
    predict: Callable[[np.ndarray], np.ndarray],
    X: np.ndarray,
    y: np.ndarray,
    task: str,
    repeats: int = 5,
    seed: int = 0,
    feature_names: Sequence[str] | None = None,
) -> list[tuple[str, float]]:
    """Mean score degradation per shuffled column, ranked descending.

    Degradation is RMSE increase for regression and macro-F1 drop for
    classification, so bigger is always "more important".  `predict` takes
    raw (unstandardized) inputs, matching TrainedPredictor.predict.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.shape[0] < 10:
        raise ValueError(f"need at least 10 rows, got {X.shape[0]}")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    names = list(feature_names) if feature_names is not None else [str(j) for j in range(X.shape[1])]
    if len(names) != X.shape[1]:
        raise ValueError("feature_names length mismatch")
    baseline = score_predictions(task, predict(X), y)
    rng = np.random.default_rng(seed)
    scores = []
    for j in range(X.shape[1]):
        deltas = []
        for _ in range(repeats):
            shuffled = X.copy()
            shuffled[:, j] = shuffled[rng.permutation(X.shape[0]), j]
            permuted = score_predictions(task, predict(shuffled), y)
            deltas.append(baseline - permuted if task == CLASSIFY else permuted - baseline)
        scores.append(float(np.mean(deltas)))
    order = sorted(range(len(scores)), key=lambda j: (-scores[j], j))
    return [(names[j], scores[j]) for j in order]
