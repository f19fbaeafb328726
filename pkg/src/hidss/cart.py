"""Deterministic CART binary classifier.

Greedy recursive splitting on weighted Gini decrease. All the degrees of
freedom the textbook algorithm leaves open are pinned so that two trainings
of the same data serialize byte-identically: midpoint thresholds, "go left
iff value <= threshold", ties broken by lowest feature index then lowest
threshold, Laplace-smoothed leaf probabilities (pos+1)/(total+2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import canonical
from .kernels import best_split

MILESTONES = ("survival", "series_a")
SIGNAL_SOURCES = ("crowd", "machine")


@dataclass(frozen=True)
class CartParams:
    max_depth: int = 6
    min_leaf: int = 5
    min_impurity_decrease: float = 1e-7

    def to_dict(self) -> dict:
        return {"max_depth": self.max_depth, "min_leaf": self.min_leaf, "min_impurity_decrease": self.min_impurity_decrease}

    @classmethod
    def from_dict(cls, doc: dict) -> "CartParams":
        return cls(doc["max_depth"], doc["min_leaf"], doc["min_impurity_decrease"])


@dataclass
class LabeledDataset:
    X: np.ndarray                      # (n, d) float64
    y: np.ndarray                      # (n,) 0/1
    feature_schema_id: str
    milestone: str
    signal_source: str

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64).reshape(len(self.y), -1) if len(self.y) else np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.int64)

    @property
    def n_rows(self) -> int:
        return len(self.y)


@dataclass
class TreeModel:
    """Flat node list, pre-order, children referenced by index.

    Internal node: {"kind": "split", "feature": i, "threshold": t,
    "left": idx, "right": idx}. Leaf: {"kind": "leaf", "pos": p, "total": n}.
    """

    nodes: list[dict]
    params: CartParams
    milestone: str
    signal_source: str
    feature_schema_id: str
    degenerate: bool = False           # trained on a single-class dataset

    def predict(self, features: np.ndarray) -> float:
        features = np.asarray(features, dtype=np.float64)
        node = self.nodes[0]
        while node["kind"] == "split":
            node = self.nodes[node["left"] if features[node["feature"]] <= node["threshold"] else node["right"]]
        return (node["pos"] + 1) / (node["total"] + 2)

    @property
    def depth(self) -> int:
        def walk(idx: int) -> int:
            node = self.nodes[idx]
            if node["kind"] == "leaf":
                return 0
            return 1 + max(walk(node["left"]), walk(node["right"]))

        return walk(0)

    def to_dict(self) -> dict:
        return {
            "nodes": [dict(node, index=i) for i, node in enumerate(self.nodes)],
            "params": self.params.to_dict(),
            "milestone": self.milestone,
            "signal_source": self.signal_source,
            "feature_schema_id": self.feature_schema_id,
            "degenerate": self.degenerate,
        }

    def serialize(self) -> str:
        return canonical.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "TreeModel":
        nodes = []
        for node in doc["nodes"]:
            node = dict(node)
            node.pop("index", None)
            nodes.append(node)
        return cls(
            nodes=nodes,
            params=CartParams.from_dict(doc["params"]),
            milestone=doc["milestone"],
            signal_source=doc["signal_source"],
            feature_schema_id=doc["feature_schema_id"],
            degenerate=doc.get("degenerate", False),
        )

    @classmethod
    def deserialize(cls, text: str) -> "TreeModel":
        return cls.from_dict(canonical.loads(text))


def train_cart(data: LabeledDataset, params: CartParams = CartParams()) -> TreeModel:
    if data.n_rows == 0:
        raise ValueError("cannot train on an empty dataset")
    X, y = data.X, data.y
    degenerate = len(np.unique(y)) < 2
    nodes: list[dict] = []

    def build(idx: np.ndarray, depth: int) -> int:
        node_index = len(nodes)
        nodes.append({})               # reserve pre-order slot
        pos = int(np.sum(y[idx]))
        total = int(len(idx))
        make_leaf = (
            depth >= params.max_depth
            or total < 2 * params.min_leaf
            or pos == 0
            or pos == total
        )
        if not make_leaf:
            feature, threshold, decrease = best_split(X[idx], y[idx].astype(np.float64), params.min_leaf)
            if feature < 0 or decrease < params.min_impurity_decrease:
                make_leaf = True
        if make_leaf:
            nodes[node_index] = {"kind": "leaf", "pos": pos, "total": total}
            return node_index
        mask = X[idx, feature] <= threshold
        left = build(idx[mask], depth + 1)
        right = build(idx[~mask], depth + 1)
        nodes[node_index] = {"kind": "split", "feature": feature, "threshold": threshold, "left": left, "right": right}
        return node_index

    build(np.arange(data.n_rows), 0)
    return TreeModel(
        nodes=nodes,
        params=params,
        milestone=data.milestone,
        signal_source=data.signal_source,
        feature_schema_id=data.feature_schema_id,
        degenerate=degenerate,
    )
