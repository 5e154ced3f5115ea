"""Five native model families behind one small fit/predict interface.

All models consume already-standardized inputs (the tuner owns the
standardizer) and are deterministic for a fixed seed.  Classification
labels are dense ints 0..K-1; regression targets are floats.
"""

from __future__ import annotations

import numpy as np

CLASSIFY = "classify"
REGRESS = "regress"


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    return X[None, :] if X.ndim == 1 else X


def _majority(labels: np.ndarray, n_classes: int) -> int:
    counts = np.bincount(labels, minlength=n_classes)
    return int(np.argmax(counts))


# ---------------------------------------------------------------- linear


class LinearModel:
    """Ridge regression (closed form) or multinomial logistic regression
    (full-batch gradient descent).  alpha is the L2 strength; the intercept
    is never penalized."""

    family = "linear"

    def __init__(self, task: str, alpha: float = 0.0, n_classes: int | None = None):
        self.task = task
        self.alpha = float(alpha)
        self.n_classes = n_classes
        self.coef_: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LinearModel":
        X = _as_matrix(X)
        ones = np.ones((X.shape[0], 1))
        Xa = np.hstack([ones, X])
        if self.task == REGRESS:
            y = np.asarray(y, dtype=np.float64)
            if self.alpha == 0.0:
                self.coef_, *_ = np.linalg.lstsq(Xa, y, rcond=None)
            else:
                penalty = self.alpha * np.eye(Xa.shape[1])
                penalty[0, 0] = 0.0
                self.coef_ = np.linalg.solve(Xa.T @ Xa + penalty, Xa.T @ y)
            return self
        y = np.asarray(y, dtype=np.int64)
        k = self.n_classes or int(y.max()) + 1
        self.n_classes = k
        W = np.zeros((Xa.shape[1], k))
        onehot = np.eye(k)[y]
        lr = 0.1
        for _ in range(300):
            probs = _softmax(Xa @ W)
            grad = Xa.T @ (probs - onehot) / Xa.shape[0]
            grad[1:] += self.alpha * W[1:] / Xa.shape[0]
            W -= lr * grad
        self.coef_ = W
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        Xa = np.hstack([np.ones((X.shape[0], 1)), X])
        if self.task == REGRESS:
            return Xa @ self.coef_
        return np.argmax(Xa @ self.coef_, axis=1)

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "alpha": self.alpha,
            "n_classes": self.n_classes,
            "coef": self.coef_.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearModel":
        model = cls(data["task"], data["alpha"], data["n_classes"])
        model.coef_ = np.asarray(data["coef"], dtype=np.float64)
        return model


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


# ------------------------------------------------------------------ tree


class DecisionTree:
    """CART: gini for classification, variance for regression.

    Nodes live in a flat list (iterative build, no recursion-depth limit):
    internal nodes are [feat, thr, left, right], leaves are [-1, value].
    Split ties go to the lowest feature index, then the lowest threshold.
    """

    family = "tree"

    def __init__(
        self,
        task: str,
        max_depth: int | None = None,
        min_samples_split: int = 2,
        n_classes: int | None = None,
    ):
        self.task = task
        self.max_depth = max_depth
        self.min_samples_split = int(min_samples_split)
        self.n_classes = n_classes
        self.nodes: list[list] = []

    def fit(self, X: np.ndarray, y: np.ndarray, rng: np.random.Generator | None = None,
            mtry: int | None = None) -> "DecisionTree":
        X = _as_matrix(X)
        if self.task == CLASSIFY:
            y = np.asarray(y, dtype=np.int64)
            if self.n_classes is None:
                self.n_classes = int(y.max()) + 1
        else:
            y = np.asarray(y, dtype=np.float64)
        self.nodes = []
        # Stack of (row indices, depth, node slot); slot -1 seeds the root.
        stack: list[tuple[np.ndarray, int, int, int]] = [(np.arange(X.shape[0]), 0, -1, 0)]
        while stack:
            idx, depth, parent, side = stack.pop()
            node_id = len(self.nodes)
            if parent >= 0:
                self.nodes[parent][2 + side] = node_id
            split = self._find_split(X, y, idx, depth, rng, mtry)
            if split is None:
                self.nodes.append([-1, self._leaf_value(y[idx])])
                continue
            feat, thr = split
            self.nodes.append([feat, thr, -1, -1])
            left = idx[X[idx, feat] <= thr]
            right = idx[X[idx, feat] > thr]
            # Right is pushed first so the left subtree is built first.
            stack.append((right, depth + 1, node_id, 1))
            stack.append((left, depth + 1, node_id, 0))
        return self

    def _leaf_value(self, y: np.ndarray):
        if self.task == CLASSIFY:
            return _majority(y, self.n_classes)
        return float(y.mean())

    def _find_split(self, X, y, idx, depth, rng, mtry):
        m = idx.size
        if m < self.min_samples_split:
            return None
        if self.max_depth is not None and depth >= self.max_depth:
            return None
        if self.task == CLASSIFY:
            if np.unique(y[idx]).size == 1:
                return None
        elif np.ptp(y[idx]) == 0.0:
            return None
        d = X.shape[1]
        if rng is not None and mtry is not None and mtry < d:
            feat_ids = np.sort(rng.choice(d, size=mtry, replace=False))
        else:
            feat_ids = np.arange(d)
        best = None
        parent_score = self._subset_score(y[idx])
        for feat in feat_ids:
            xs = X[idx, feat]
            order = np.argsort(xs, kind="stable")
            xv = xs[order]
            yv = y[idx[order]]
            cuts = np.flatnonzero(xv[:-1] < xv[1:])
            if cuts.size == 0:
                continue
            scores = self._split_scores(yv, cuts, m)
            pos = int(np.argmin(scores))
            score = float(scores[pos])
            if score < parent_score - 1e-12 and (best is None or score < best[0]):
                cut = cuts[pos]
                best = (score, int(feat), float((xv[cut] + xv[cut + 1]) / 2.0))
        if best is None:
            return None
        return best[1], best[2]

    def _subset_score(self, y: np.ndarray) -> float:
        # Both scores are additive over children: m * impurity.
        if self.task == CLASSIFY:
            counts = np.bincount(y, minlength=self.n_classes).astype(np.float64)
            return float(y.size - (counts**2).sum() / y.size)
        return float(((y - y.mean()) ** 2).sum())

    def _split_scores(self, yv: np.ndarray, cuts: np.ndarray, m: int) -> np.ndarray:
        nl = (cuts + 1).astype(np.float64)
        nr = m - nl
        if self.task == CLASSIFY:
            onehot = np.eye(self.n_classes)[yv]
            cum = np.cumsum(onehot, axis=0)
            left = cum[cuts]
            right = cum[-1] - left
            return (nl - (left**2).sum(axis=1) / nl) + (nr - (right**2).sum(axis=1) / nr)
        cum = np.cumsum(yv)
        cumsq = np.cumsum(yv**2)
        sl = cum[cuts]
        ssl = cumsq[cuts]
        sse_l = ssl - sl**2 / nl
        sse_r = (cumsq[-1] - ssl) - (cum[-1] - sl) ** 2 / nr
        return sse_l + sse_r

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        out = np.empty(X.shape[0], dtype=np.int64 if self.task == CLASSIFY else np.float64)
        for i, row in enumerate(X):
            node = self.nodes[0]
            while node[0] >= 0:
                node = self.nodes[node[2] if row[node[0]] <= node[1] else node[3]]
            out[i] = node[1]
        return out

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "n_classes": self.n_classes,
            "nodes": self.nodes,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionTree":
        model = cls(data["task"], data["max_depth"], data["min_samples_split"], data["n_classes"])
        model.nodes = [list(node) for node in data["nodes"]]
        return model


# ---------------------------------------------------------------- forest


class RandomForest:
    """Bagged CART trees with per-node feature subsampling."""

    family = "forest"

    def __init__(
        self,
        task: str,
        n_estimators: int = 100,
        min_samples_split: int = 2,
        n_classes: int | None = None,
        seed: int = 0,
    ):
        self.task = task
        self.n_estimators = int(n_estimators)
        self.min_samples_split = int(min_samples_split)
        self.n_classes = n_classes
        self.seed = int(seed)
        self.trees: list[DecisionTree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RandomForest":
        X = _as_matrix(X)
        if self.task == CLASSIFY:
            y = np.asarray(y, dtype=np.int64)
            if self.n_classes is None:
                self.n_classes = int(y.max()) + 1
        else:
            y = np.asarray(y, dtype=np.float64)
        d = X.shape[1]
        if self.task == CLASSIFY:
            mtry = max(1, int(np.ceil(np.sqrt(d))))
        else:
            mtry = max(1, d // 3)
        self.trees = []
        for t in range(self.n_estimators):
            rng = np.random.default_rng((self.seed, t))
            boot = rng.integers(0, X.shape[0], size=X.shape[0])
            tree = DecisionTree(
                self.task, None, self.min_samples_split, n_classes=self.n_classes
            )
            tree.fit(X[boot], y[boot], rng=rng, mtry=mtry)
            self.trees.append(tree)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        votes = np.stack([tree.predict(X) for tree in self.trees])
        if self.task == REGRESS:
            return votes.mean(axis=0)
        out = np.empty(X.shape[0], dtype=np.int64)
        for i in range(X.shape[0]):
            out[i] = _majority(votes[:, i], self.n_classes)
        return out

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "n_estimators": self.n_estimators,
            "min_samples_split": self.min_samples_split,
            "n_classes": self.n_classes,
            "seed": self.seed,
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RandomForest":
        model = cls(
            data["task"],
            data["n_estimators"],
            data["min_samples_split"],
            data["n_classes"],
            data["seed"],
        )
        model.trees = [DecisionTree.from_dict(t) for t in data["trees"]]
        return model


# ------------------------------------------------------------------- knn


class KNearest:
    """Plain k-nearest-neighbour on standardized inputs."""

    family = "knn"

    def __init__(self, task: str, k: int = 5, n_classes: int | None = None):
        self.task = task
        self.k = int(k)
        self.n_classes = n_classes
        self.X_: np.ndarray | None = None
        self.y_: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNearest":
        self.X_ = _as_matrix(X).copy()
        if self.task == CLASSIFY:
            self.y_ = np.asarray(y, dtype=np.int64).copy()
            if self.n_classes is None:
                self.n_classes = int(self.y_.max()) + 1
        else:
            self.y_ = np.asarray(y, dtype=np.float64).copy()
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        k = min(self.k, self.X_.shape[0])
        out = np.empty(X.shape[0], dtype=np.int64 if self.task == CLASSIFY else np.float64)
        for i, row in enumerate(X):
            dist = ((self.X_ - row) ** 2).sum(axis=1)
            near = np.argsort(dist, kind="stable")[:k]
            if self.task == CLASSIFY:
                out[i] = _majority(self.y_[near], self.n_classes)
            else:
                out[i] = self.y_[near].mean()
        return out

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "k": self.k,
            "n_classes": self.n_classes,
            "X": self.X_.tolist(),
            "y": self.y_.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KNearest":
        model = cls(data["task"], data["k"], data["n_classes"])
        model.X_ = np.asarray(data["X"], dtype=np.float64)
        dtype = np.int64 if data["task"] == CLASSIFY else np.float64
        model.y_ = np.asarray(data["y"], dtype=dtype)
        return model


# ------------------------------------------------------------------- mlp


class MLP:
    """One hidden tanh layer (32 units), full-batch gradient descent with
    momentum.  Regression targets are z-scored internally so one learning
    rate works across target scales."""

    family = "mlp"

    HIDDEN = 32
    LR = 0.05
    MOMENTUM = 0.9

    def __init__(self, task: str, epochs: int = 100, n_classes: int | None = None, seed: int = 0):
        self.task = task
        self.epochs = int(epochs)
        self.n_classes = n_classes
        self.seed = int(seed)
        self.params_: dict[str, np.ndarray] = {}
        self.y_mean = 0.0
        self.y_std = 1.0

    def fit(self, X: np.ndarray, y: np.ndarray) -> "MLP":
        X = _as_matrix(X)
        m, d = X.shape
        rng = np.random.default_rng(self.seed)
        if self.task == CLASSIFY:
            y = np.asarray(y, dtype=np.int64)
            if self.n_classes is None:
                self.n_classes = int(y.max()) + 1
            k = self.n_classes
            target = np.eye(k)[y]
        else:
            y = np.asarray(y, dtype=np.float64)
            self.y_mean = float(y.mean())
            self.y_std = float(y.std()) or 1.0
            target = ((y - self.y_mean) / self.y_std)[:, None]
            k = 1
        W1 = rng.normal(0.0, 1.0 / np.sqrt(d), (d, self.HIDDEN))
        b1 = np.zeros(self.HIDDEN)
        W2 = rng.normal(0.0, 1.0 / np.sqrt(self.HIDDEN), (self.HIDDEN, k))
        b2 = np.zeros(k)
        vel = [np.zeros_like(p) for p in (W1, b1, W2, b2)]
        for _ in range(self.epochs):
            hidden = np.tanh(X @ W1 + b1)
            logits = hidden @ W2 + b2
            if self.task == CLASSIFY:
                delta = (_softmax(logits) - target) / m
            else:
                delta = (logits - target) / m
            grads = [
                X.T @ ((delta @ W2.T) * (1 - hidden**2)),
                ((delta @ W2.T) * (1 - hidden**2)).sum(axis=0),
                hidden.T @ delta,
                delta.sum(axis=0),
            ]
            params = [W1, b1, W2, b2]
            for j in range(4):
                vel[j] = self.MOMENTUM * vel[j] - self.LR * grads[j]
                params[j] += vel[j]
        self.params_ = {"W1": W1, "b1": b1, "W2": W2, "b2": b2}
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        p = self.params_
        hidden = np.tanh(X @ p["W1"] + p["b1"])
        logits = hidden @ p["W2"] + p["b2"]
        if self.task == CLASSIFY:
            return np.argmax(logits, axis=1)
        return logits[:, 0] * self.y_std + self.y_mean

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "epochs": self.epochs,
            "n_classes": self.n_classes,
            "seed": self.seed,
            "y_mean": self.y_mean,
            "y_std": self.y_std,
            "params": {k: v.tolist() for k, v in self.params_.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MLP":
        model = cls(data["task"], data["epochs"], data["n_classes"], data["seed"])
        model.y_mean = data["y_mean"]
        model.y_std = data["y_std"]
        model.params_ = {k: np.asarray(v, dtype=np.float64) for k, v in data["params"].items()}
        return model


MODEL_CLASSES = {
    "linear": LinearModel,
    "tree": DecisionTree,
    "forest": RandomForest,
    "knn": KNearest,
    "mlp": MLP,
}


def model_from_dict(family: str, data: dict):
    return MODEL_CLASSES[family].from_dict(data)
