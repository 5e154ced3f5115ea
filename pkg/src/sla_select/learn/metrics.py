"""Evaluation metrics for the predictors."""

from __future__ import annotations

import math

import numpy as np


def evaluate_regression(pred, truth) -> dict[str, float | None]:
    """RMSE and R².  R² is absent (None) for zero-variance truth or fewer
    than two points; it may legitimately be negative."""
    pred = np.asarray(pred, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if pred.shape != truth.shape:
        raise ValueError(f"length mismatch: {pred.shape} vs {truth.shape}")
    if pred.size == 0:
        raise ValueError("empty inputs")
    rmse = math.sqrt(float(np.mean((pred - truth) ** 2)))
    if truth.size < 2:
        return {"rmse": rmse, "r2": None}
    ss_tot = float(np.sum((truth - truth.mean()) ** 2))
    if ss_tot == 0.0:
        return {"rmse": rmse, "r2": None}
    ss_res = float(np.sum((pred - truth) ** 2))
    return {"rmse": rmse, "r2": 1.0 - ss_res / ss_tot}


def evaluate_classification(pred, truth) -> dict[str, float]:
    """Accuracy and macro-F1 over the classes observed in pred or truth."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape:
        raise ValueError(f"length mismatch: {pred.shape} vs {truth.shape}")
    if pred.size == 0:
        raise ValueError("empty inputs")
    accuracy = float(np.mean(pred == truth))
    classes = np.unique(np.concatenate([pred, truth]))
    f1s = []
    for cls in classes:
        tp = int(np.sum((pred == cls) & (truth == cls)))
        fp = int(np.sum((pred == cls) & (truth != cls)))
        fn = int(np.sum((pred != cls) & (truth == cls)))
        denom = 2 * tp + fp + fn
        f1s.append(2 * tp / denom if denom else 0.0)
    return {"accuracy": accuracy, "f1_macro": float(np.mean(f1s))}
