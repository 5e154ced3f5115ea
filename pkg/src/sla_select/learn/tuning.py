"""Grid search over the model families with validation-fold selection."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .metrics import evaluate_classification, evaluate_regression
from .models import CLASSIFY, MODEL_CLASSES, DecisionTree, KNearest, LinearModel, MLP, RandomForest
from .standardize import Standardizer

log = logging.getLogger(__name__)

FAMILIES = ("linear", "tree", "forest", "knn", "mlp")

GRIDS = {
    "linear": [{"alpha": a} for a in (0.0, 0.1, 1.0)],
    "tree": [
        {"max_depth": d, "min_samples_split": s}
        for d in (4, 8, 16, None)
        for s in (2, 5, 10)
    ],
    "forest": [
        {"n_estimators": n, "min_samples_split": s}
        for n in (50, 100, 200)
        for s in (2, 5, 10)
    ],
    "knn": [{"k": k} for k in (3, 5, 7)],
    "mlp": [{"epochs": e} for e in (50, 100)],
}


@dataclass
class TrainedPredictor:
    """One fitted model plus everything needed to use it later."""

    family: str
    task: str
    hyperparams: dict
    model: object
    standardizer: Standardizer
    val_score: float
    constant: bool = False
    constant_class: int | None = None

    def predict(self, X_raw: np.ndarray) -> np.ndarray:
        X = self.standardizer.transform(np.atleast_2d(np.asarray(X_raw, dtype=np.float64)))
        if self.constant:
            return np.full(X.shape[0], self.constant_class, dtype=np.int64)
        return self.model.predict(X)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "task": self.task,
            "hyperparams": self.hyperparams,
            "standardizer": self.standardizer.to_dict(),
            "val_score": self.val_score,
            "constant": self.constant,
            "constant_class": self.constant_class,
            "model": None if self.constant else self.model.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrainedPredictor":
        model = None
        if not data["constant"]:
            model = MODEL_CLASSES[data["family"]].from_dict(data["model"])
        return cls(
            family=data["family"],
            task=data["task"],
            hyperparams=data["hyperparams"],
            model=model,
            standardizer=Standardizer.from_dict(data["standardizer"]),
            val_score=data["val_score"],
            constant=data["constant"],
            constant_class=data["constant_class"],
        )


def _build_model(family: str, task: str, params: dict, seed: int, n_classes: int | None):
    if family == "linear":
        return LinearModel(task, params["alpha"], n_classes)
    if family == "tree":
        return DecisionTree(task, params["max_depth"], params["min_samples_split"], n_classes)
    if family == "forest":
        return RandomForest(
            task, params["n_estimators"], params["min_samples_split"], n_classes, seed
        )
    if family == "knn":
        return KNearest(task, params["k"], n_classes)
    if family == "mlp":
        return MLP(task, params["epochs"], n_classes, seed)
    raise ValueError(f"unknown model family {family!r}")


def score_predictions(task: str, pred: np.ndarray, truth: np.ndarray) -> float:
    """Scalar selection score: macro-F1 (higher wins) or RMSE (lower wins)."""
    if task == CLASSIFY:
        return evaluate_classification(pred, truth)["f1_macro"]
    return evaluate_regression(pred, truth)["rmse"]


def better(task: str, a: float, b: float) -> bool:
    """Is score a strictly better than b for this task?"""
    return a > b if task == CLASSIFY else a < b


def grid_candidates(
    family: str,
    task: str,
    train: tuple[np.ndarray, np.ndarray],
    val: tuple[np.ndarray, np.ndarray],
    grid: list[dict] | None = None,
    seed: int = 0,
    n_classes: int | None = None,
    fit_log: list | None = None,
) -> list[TrainedPredictor]:
    """Fit every grid point for one family and score each on the validation
    fold.  Every fit appends exactly one record to fit_log."""
    X_train, y_train = train
    X_val, y_val = val
    if len(X_train) == 0 or len(X_val) == 0:
        raise ValueError("empty training or validation fold")
    grid = GRIDS[family] if grid is None else grid
    if not grid:
        raise ValueError("empty hyperparameter grid")
    std = Standardizer.fit(np.asarray(X_train, dtype=np.float64))
    Xt = std.transform(X_train)
    Xv = std.transform(X_val)

    if task == CLASSIFY:
        classes = np.unique(np.asarray(y_train, dtype=np.int64))
        if classes.size == 1:
            # Nothing to separate; a constant predictor is the honest fit.
            only = int(classes[0])
            pred = np.full(len(y_val), only, dtype=np.int64)
            score = score_predictions(task, pred, y_val)
            predictor = TrainedPredictor(
                family, task, {}, None, std, score, constant=True, constant_class=only
            )
            if fit_log is not None:
                fit_log.append(
                    {"family": family, "hyperparams": {}, "val_score": score, "constant": True}
                )
            return [predictor]

    fitted: list[TrainedPredictor] = []
    for params in grid:
        model = _build_model(family, task, params, seed, n_classes)
        model.fit(Xt, np.asarray(y_train))
        score = score_predictions(task, model.predict(Xv), np.asarray(y_val))
        if fit_log is not None:
            fit_log.append({"family": family, "hyperparams": dict(params), "val_score": score})
        log.debug("fit %s %s -> val %s=%.6f", family, params, "f1" if task == CLASSIFY else "rmse", score)
        fitted.append(TrainedPredictor(family, task, dict(params), model, std, score))
    return fitted


def train_model(
    family: str,
    task: str,
    train: tuple[np.ndarray, np.ndarray],
    val: tuple[np.ndarray, np.ndarray],
    grid: list[dict] | None = None,
    seed: int = 0,
    n_classes: int | None = None,
    fit_log: list | None = None,
) -> TrainedPredictor:
    """Grid search for one family; returns the best fit by validation score
    (first in grid order on ties)."""
    candidates = grid_candidates(family, task, train, val, grid, seed, n_classes, fit_log)
    best = candidates[0]
    for cand in candidates[1:]:
        if better(task, cand.val_score, best.val_score):
            best = cand
    return best
