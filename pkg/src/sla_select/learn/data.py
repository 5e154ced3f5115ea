"""Dataset-row to model-matrix plumbing."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..features import MODEL_INPUT_NAMES
from .binning import BinMetric, BinScheme, TARGET_COLUMN_FOR, bin_targets, scheme_for


def input_matrix(rows: Sequence[dict]) -> np.ndarray:
    """(m, 24) inputs in MODEL_INPUT_NAMES order."""
    return np.array(
        [[float(row[name]) for name in MODEL_INPUT_NAMES] for row in rows], dtype=np.float64
    )


def target_values(rows: Sequence[dict], metric: BinMetric) -> list[float | None]:
    col = TARGET_COLUMN_FOR[metric]
    return [None if row[col] is None else float(row[col]) for row in rows]


def row_statuses(rows: Sequence[dict]) -> list[str]:
    return [str(row["status"]) for row in rows]


def fit_scheme(metric: BinMetric, train_rows: Sequence[dict]) -> BinScheme:
    """Time and gap schemes are fixed; memory quartiles come from the
    training rows that actually observed a memory value."""
    if metric is BinMetric.MEMORY:
        observed = [v for v in target_values(train_rows, metric) if v is not None]
        return scheme_for(metric, observed)
    return scheme_for(metric)


def regression_data(rows: Sequence[dict], metric: BinMetric) -> tuple[np.ndarray, np.ndarray]:
    """Inputs and raw targets, restricted to rows with an observed value."""
    values = target_values(rows, metric)
    kept = [i for i, v in enumerate(values) if v is not None]
    if not kept:
        raise ValueError(f"no observed {TARGET_COLUMN_FOR[metric]} values to regress on")
    X = input_matrix([rows[i] for i in kept])
    y = np.array([values[i] for i in kept], dtype=np.float64)
    return X, y


def classification_data(
    rows: Sequence[dict], metric: BinMetric, scheme: BinScheme
) -> tuple[np.ndarray, np.ndarray]:
    """Inputs and class labels for every row; failed runs take the worst bin."""
    X = input_matrix(rows)
    labels = bin_targets(target_values(rows, metric), scheme, row_statuses(rows))
    return X, labels
