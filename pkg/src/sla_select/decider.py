"""SLA compliance checking, ranking, and negotiation hints."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .features import HardwareConfig
from .instances import Variant

METRICS = ("time", "gap", "memory")
PREDICTION_KEY = {"time": "t_s", "gap": "o_pct", "memory": "m_kb"}
THRESHOLD_KEY = {"time": "t_max_s", "gap": "o_max_pct", "memory": "m_max_kb"}


class Mode(str, Enum):
    STRICT = "strict"
    LENIENT = "lenient"


class RequestError(ValueError):
    """Request document violates the schema; `path` names the bad field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class UnsupportedProblem(RequestError):
    pass


@dataclass(frozen=True)
class SlaThresholds:
    t_max_s: float
    o_max_pct: float
    m_max_kb: float

    def __post_init__(self) -> None:
        for name in ("t_max_s", "o_max_pct", "m_max_kb"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    def for_metric(self, metric: str) -> float:
        return getattr(self, THRESHOLD_KEY[metric])


@dataclass(frozen=True)
class SlaRequest:
    problem_type: str
    variant: Variant
    instance_path: str
    hardware: HardwareConfig
    thresholds: SlaThresholds
    weights: dict[str, float]
    mode: Mode


def _require(doc: dict, key: str, path: str):
    if key not in doc:
        raise RequestError(f"{path}{key}", "missing required field")
    return doc[key]


def _positive_number(value, path: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
        raise RequestError(path, f"must be a positive number, got {value!r}")
    return float(value)


def parse_request(doc: dict) -> SlaRequest:
    """Validate a request document; error messages carry the field path."""
    if not isinstance(doc, dict):
        raise RequestError("$", "request must be a JSON object")
    problem_type = _require(doc, "problem_type", "")
    if problem_type != "knapsack01":
        raise UnsupportedProblem("problem_type", f"unsupported problem type {problem_type!r}")
    try:
        variant = Variant(_require(doc, "variant", ""))
    except ValueError:
        raise RequestError("variant", f"must be 'max' or 'min', got {doc.get('variant')!r}") from None
    instance_path = _require(doc, "instance_path", "")
    if not isinstance(instance_path, str) or not instance_path:
        raise RequestError("instance_path", "must be a non-empty string")
    hw_doc = _require(doc, "hardware", "")
    if not isinstance(hw_doc, dict):
        raise RequestError("hardware", "must be an object")
    try:
        hardware = HardwareConfig(
            int(_require(hw_doc, "ram_gb", "hardware.")),
            int(_require(hw_doc, "cpu_cores", "hardware.")),
        )
    except ValueError as exc:
        if isinstance(exc, RequestError):
            raise
        raise RequestError("hardware", str(exc)) from None
    sla_doc = _require(doc, "sla", "")
    if not isinstance(sla_doc, dict):
        raise RequestError("sla", "must be an object")
    try:
        thresholds = SlaThresholds(
            _positive_number(_require(sla_doc, "t_max_s", "sla."), "sla.t_max_s"),
            _positive_number(_require(sla_doc, "o_max_pct", "sla."), "sla.o_max_pct"),
            _positive_number(_require(sla_doc, "m_max_kb", "sla."), "sla.m_max_kb"),
        )
    except ValueError as exc:
        if isinstance(exc, RequestError):
            raise
        raise RequestError("sla", str(exc)) from None
    weights_doc = doc.get("weights", {})
    if not isinstance(weights_doc, dict):
        raise RequestError("weights", "must be an object")
    weights = {}
    for metric in METRICS:
        value = weights_doc.get(metric, 1.0)
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value < 0:
            raise RequestError(f"weights.{metric}", f"must be a non-negative number, got {value!r}")
        weights[metric] = float(value)
    if all(w == 0.0 for w in weights.values()):
        raise RequestError("weights", "weights must not all be zero")
    mode_raw = doc.get("mode", Mode.STRICT.value)
    try:
        mode = Mode(mode_raw)
    except ValueError:
        raise RequestError("mode", f"must be 'strict' or 'lenient', got {mode_raw!r}") from None
    return SlaRequest(problem_type, variant, instance_path, hardware, thresholds, weights, mode)


@dataclass
class AlgorithmReport:
    predicted: dict[str, float | None]
    flags: dict[str, bool]
    overall: bool


@dataclass
class DecisionReport:
    mode: Mode
    thresholds: SlaThresholds
    algorithms: dict[str, AlgorithmReport]
    feasible: list[str]
    ranking: list[tuple[str, float]] = field(default_factory=list)
    hints: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "thresholds": {k: getattr(self.thresholds, k) for k in ("t_max_s", "o_max_pct", "m_max_kb")},
            "algorithms": {
                name: {
                    "predicted": dict(rep.predicted),
                    "compliant": dict(rep.flags),
                    "overall": rep.overall,
                }
                for name, rep in sorted(self.algorithms.items())
            },
            "feasible": list(self.feasible),
            "ranking": [{"algorithm": name, "score": score} for name, score in self.ranking],
            "hints": self.hints,
        }


def check_compliance(
    predictions: dict[str, dict[str, float | None]],
    thresholds: SlaThresholds,
    mode: Mode = Mode.STRICT,
) -> DecisionReport:
    """Flag every (algorithm, metric) against its threshold.

    A metric passes iff predicted <= threshold.  Strict mode fails a metric
    with no prediction; Lenient mode skips it.
    """
    if not predictions:
        raise ValueError("need predictions for at least one algorithm")
    algorithms: dict[str, AlgorithmReport] = {}
    for name, preds in predictions.items():
        flags: dict[str, bool] = {}
        for metric in METRICS:
            value = preds.get(PREDICTION_KEY[metric])
            if value is None:
                flags[metric] = mode is not Mode.STRICT
            else:
                flags[metric] = float(value) <= thresholds.for_metric(metric)
        predicted = {PREDICTION_KEY[m]: preds.get(PREDICTION_KEY[m]) for m in METRICS}
        algorithms[name] = AlgorithmReport(predicted, flags, all(flags.values()))
    feasible = sorted(name for name, rep in algorithms.items() if rep.overall)
    return DecisionReport(mode, thresholds, algorithms, feasible)


def rank_candidates(report: DecisionReport, weights: dict[str, float]) -> list[tuple[str, float]]:
    """Threshold-normalized weighted score over available metrics, ascending
    (smaller = more headroom); ties fall back to the algorithm name."""
    ranking = []
    for name in report.feasible:
        rep = report.algorithms[name]
        score = 0.0
        for metric in METRICS:
            value = rep.predicted[PREDICTION_KEY[metric]]
            if value is not None:
                score += weights.get(metric, 1.0) * float(value) / report.thresholds.for_metric(metric)
        ranking.append((name, score))
    ranking.sort(key=lambda item: (item[1], item[0]))
    return ranking


def negotiation_hints(report: DecisionReport) -> dict:
    """Relaxation factors for every violated metric, plus a global hint when
    nothing is feasible: the factors of the algorithm needing the smallest
    worst-case relaxation (absent metrics cannot be fixed by relaxing)."""
    per_algorithm: dict[str, dict[str, float | None]] = {}
    for name, rep in sorted(report.algorithms.items()):
        if rep.overall:
            continue
        violated: dict[str, float | None] = {}
        for metric in METRICS:
            if rep.flags[metric]:
                continue
            value = rep.predicted[PREDICTION_KEY[metric]]
            violated[metric] = (
                None if value is None else float(value) / report.thresholds.for_metric(metric)
            )
        per_algorithm[name] = violated
    hints: dict = {"per_algorithm": per_algorithm, "global": {}}
    if report.feasible or not per_algorithm:
        return hints
    best_name = None
    best_worst = None
    for name, violated in per_algorithm.items():
        if any(factor is None for factor in violated.values()):
            continue
        worst = max(violated.values())
        if best_worst is None or worst < best_worst or (worst == best_worst and name < best_name):
            best_name, best_worst = name, worst
    if best_name is not None:
        hints["global"] = {"algorithm": best_name, "relax": per_algorithm[best_name]}
    return hints


def decide(
    predictions: dict[str, dict[str, float | None]],
    thresholds: SlaThresholds,
    weights: dict[str, float] | None = None,
    mode: Mode = Mode.STRICT,
) -> DecisionReport:
    """Full evaluation: compliance, ranking, and hints in one report."""
    report = check_compliance(predictions, thresholds, mode)
    report.ranking = rank_candidates(report, weights or {m: 1.0 for m in METRICS})
    report.hints = negotiation_hints(report)
    return report
