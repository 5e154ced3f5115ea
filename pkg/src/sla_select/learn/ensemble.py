"""Equal-weighted top-k ensembles over trained predictors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import CLASSIFY
from .tuning import TrainedPredictor


@dataclass
class Ensemble:
    """Members sorted best-validation-first; all share task and target."""

    members: list[TrainedPredictor]
    task: str

    def to_dict(self) -> dict:
        return {"task": self.task, "members": [m.to_dict() for m in self.members]}

    @classmethod
    def from_dict(cls, data: dict) -> "Ensemble":
        return cls([TrainedPredictor.from_dict(m) for m in data["members"]], data["task"])


def build_ensemble(predictors: list[TrainedPredictor], k: int, task: str) -> Ensemble:
    """Pick the k best validation scores.  Sorting is stable, so candidates
    tied on score keep their input order and top-3 ⊆ top-5 ⊆ top-7 holds."""
    if len(predictors) < k:
        raise ValueError(f"need at least {k} candidates, got {len(predictors)}")
    if any(p.task != task for p in predictors):
        raise ValueError("all ensemble members must share the task")
    ranked = sorted(
        range(len(predictors)),
        key=lambda i: (-predictors[i].val_score if task == CLASSIFY else predictors[i].val_score, i),
    )
    return Ensemble([predictors[i] for i in ranked[:k]], task)


def ensemble_predict(ensemble: Ensemble, X_raw: np.ndarray) -> np.ndarray:
    """Mean for regression; per-row majority vote for classification, ties
    resolved by the best-validation member whose vote is among the tied."""
    outputs = np.stack([m.predict(X_raw) for m in ensemble.members])
    if ensemble.task != CLASSIFY:
        return outputs.mean(axis=0)
    n_rows = outputs.shape[1]
    result = np.empty(n_rows, dtype=np.int64)
    for i in range(n_rows):
        votes = outputs[:, i]
        classes, counts = np.unique(votes, return_counts=True)
        tied = classes[counts == counts.max()]
        if tied.size == 1:
            result[i] = tied[0]
        else:
            # Members are best-first; the first one voting inside the tie wins.
            for vote in votes:
                if vote in tied:
                    result[i] = vote
                    break
    return result
