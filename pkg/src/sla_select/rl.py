"""Tabular TD predictors (Q-learning and SARSA) over discretized states.

States are quantile bins of the highest-variance input columns, actions are
the target's bins, and the reward is the negative scaled distance between
the chosen bin's midpoint and the true target, so a greedy readout of the
table yields numeric predictions comparable with the regressors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .learn.binning import BinScheme, bin_midpoints

QLEARNING = "qlearning"
SARSA = "sarsa"

STATE_FEATURES = 5
STATE_BINS = 4


@dataclass(frozen=True)
class TDParams:
    alpha: float = 0.1
    gamma: float = 0.0
    epsilon: float = 0.1
    episodes: int = 20
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0,1], got {self.alpha}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0,1], got {self.gamma}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0,1], got {self.epsilon}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
            "episodes": self.episodes,
            "seed": self.seed,
        }


@dataclass
class StateEncoder:
    """Per-feature quantile edges over the selected input columns."""

    feature_indices: tuple[int, ...]
    edges: np.ndarray  # (features, STATE_BINS - 1)

    @classmethod
    def fit(cls, X: np.ndarray) -> "StateEncoder":
        X = np.asarray(X, dtype=np.float64)
        variances = X.var(axis=0)
        picked = np.argsort(-variances, kind="stable")[:STATE_FEATURES]
        quantiles = np.linspace(0.0, 100.0, STATE_BINS + 1)[1:-1]
        edges = np.stack([np.percentile(X[:, j], quantiles) for j in picked])
        return cls(tuple(int(j) for j in picked), edges)

    @property
    def n_states(self) -> int:
        return STATE_BINS ** len(self.feature_indices)

    def state_of(self, x: np.ndarray) -> int:
        state = 0
        for f, j in enumerate(self.feature_indices):
            b = int(np.searchsorted(self.edges[f], x[j], side="left"))
            state = state * STATE_BINS + min(b, STATE_BINS - 1)
        return state

    def states_of(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return np.array([self.state_of(row) for row in X], dtype=np.int64)

    def to_dict(self) -> dict:
        return {"feature_indices": list(self.feature_indices), "edges": self.edges.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "StateEncoder":
        return cls(tuple(data["feature_indices"]), np.asarray(data["edges"], dtype=np.float64))


@dataclass
class QTable:
    flavor: str
    encoder: StateEncoder
    midpoints: np.ndarray
    table: np.ndarray
    params: TDParams

    def to_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "encoder": self.encoder.to_dict(),
            "midpoints": self.midpoints.tolist(),
            "table": self.table.tolist(),
            "params": self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QTable":
        return cls(
            flavor=data["flavor"],
            encoder=StateEncoder.from_dict(data["encoder"]),
            midpoints=np.asarray(data["midpoints"], dtype=np.float64),
            table=np.asarray(data["table"], dtype=np.float64),
            params=TDParams(**data["params"]),
        )


def _eps_greedy(rng: np.random.Generator, q_row: np.ndarray, epsilon: float) -> int:
    if rng.random() < epsilon:
        return int(rng.integers(0, q_row.size))
    return int(np.argmax(q_row))


def train_td(
    X: np.ndarray,
    y: np.ndarray,
    scheme: BinScheme,
    flavor: str = QLEARNING,
    params: TDParams | None = None,
) -> QTable:
    """Episodes sweep the training rows in a seeded shuffle; consecutive
    rows form the transition chain.

    The next action is drawn before the current update for both flavors, so
    the only difference is the bootstrap term (max for Q-learning, chosen
    action for SARSA) and γ=0 makes the two produce identical tables.
    """
    if flavor not in (QLEARNING, SARSA):
        raise ValueError(f"unknown TD flavor {flavor!r}")
    params = params or TDParams()
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] == 0:
        raise ValueError("empty training data")
    encoder = StateEncoder.fit(X)
    midpoints = bin_midpoints(scheme, float(y.min()), float(y.max()))
    scale = float(y.max() - y.min()) or 1.0
    states = encoder.states_of(X)
    table = np.zeros((encoder.n_states, midpoints.size))
    rng = np.random.default_rng(params.seed)
    for _ in range(params.episodes):
        order = rng.permutation(X.shape[0])
        action = _eps_greedy(rng, table[states[order[0]]], params.epsilon)
        for t in range(order.size):
            row = order[t]
            s = states[row]
            reward = -abs(midpoints[action] - y[row]) / scale
            if t + 1 < order.size:
                s_next = states[order[t + 1]]
                action_next = _eps_greedy(rng, table[s_next], params.epsilon)
                if flavor == QLEARNING:
                    bootstrap = float(table[s_next].max())
                else:
                    bootstrap = float(table[s_next, action_next])
            else:
                action_next = None
                bootstrap = 0.0
            table[s, action] += params.alpha * (
                reward + params.gamma * bootstrap - table[s, action]
            )
            if action_next is None:
                break
            action = action_next
    return QTable(flavor, encoder, midpoints, table, params)


def td_predict(qtable: QTable, X: np.ndarray) -> np.ndarray:
    """Midpoint of the greedy action at each row's state (ties: lowest)."""
    states = qtable.encoder.states_of(X)
    actions = np.argmax(qtable.table[states], axis=1)
    return qtable.midpoints[actions]
