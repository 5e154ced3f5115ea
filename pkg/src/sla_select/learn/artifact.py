"""Versioned JSON model container shared by all predictor kinds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .binning import BinScheme
from .ensemble import Ensemble, ensemble_predict
from .tuning import TrainedPredictor

FORMAT_NAME = "sla-select-model"
FORMAT_VERSION = 1

KIND_ENSEMBLE = "ensemble"
KIND_SINGLE = "single"
KIND_RL = "rl"


@dataclass
class ModelArtifact:
    kind: str
    algorithm: str
    metric: str
    task: str
    payload: object
    bin_scheme: BinScheme | None = None
    top_k: int | None = None
    fit_log: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def predict(self, X_raw: np.ndarray) -> np.ndarray:
        if self.kind == KIND_ENSEMBLE:
            return ensemble_predict(self.payload, X_raw)
        if self.kind == KIND_SINGLE:
            return self.payload.predict(X_raw)
        from ..rl import td_predict

        return td_predict(self.payload, X_raw)

    def to_json_dict(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "kind": self.kind,
            "algorithm": self.algorithm,
            "metric": self.metric,
            "task": self.task,
            "top_k": self.top_k,
            "bin_scheme": None if self.bin_scheme is None else self.bin_scheme.to_dict(),
            "fit_log": self.fit_log,
            "meta": self.meta,
            "payload": self.payload.to_dict(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelArtifact":
        if data.get("format") != FORMAT_NAME:
            raise ValueError("not a model artifact file")
        if data.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported artifact version {data.get('version')}")
        kind = data["kind"]
        if kind == KIND_ENSEMBLE:
            payload = Ensemble.from_dict(data["payload"])
        elif kind == KIND_SINGLE:
            payload = TrainedPredictor.from_dict(data["payload"])
        elif kind == KIND_RL:
            from ..rl import QTable

            payload = QTable.from_dict(data["payload"])
        else:
            raise ValueError(f"unknown artifact kind {kind!r}")
        scheme = data["bin_scheme"]
        return cls(
            kind=kind,
            algorithm=data["algorithm"],
            metric=data["metric"],
            task=data["task"],
            payload=payload,
            bin_scheme=None if scheme is None else BinScheme.from_dict(scheme),
            top_k=data["top_k"],
            fit_log=data["fit_log"],
            meta=data.get("meta", {}),
        )

    def save(self, path: str | Path) -> None:
        text = json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))
        Path(path).write_text(text + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "ModelArtifact":
        return cls.from_json_dict(json.loads(Path(path).read_text()))
