"""Axis-aligned binary decision trees grown by information gain.

Induction is deliberately plain: greedy top-down splitting on Shannon entropy,
midpoint thresholds between consecutive distinct feature values, and fully
deterministic tie-breaking (lowest feature index, then lowest threshold).
The split search is the hot loop; it runs on a compiled kernel when the
extension built, and on a bit-identical pure-Python fallback otherwise. Set
``TRUSTSIM_PURE_PYTHON=1`` before import to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Verdict
from . import _splitpy

if os.environ.get("TRUSTSIM_PURE_PYTHON"):
    _default_backend = _splitpy
else:
    try:
        from . import _splitc as _default_backend  # type: ignore[no-redef]
    except ImportError:
        _default_backend = _splitpy

#: Name of the split kernel selected at import ("compiled" or "python").
SPLIT_BACKEND = _default_backend.BACKEND


class EmptyDataset(ValueError):
    """Training was requested on zero records."""


@dataclass(frozen=True)
class Leaf:
    """Terminal node: the majority verdict of its training subset.

    ``counts`` is (untrustworthy, trustworthy) training examples that reached
    the leaf; exact ties resolve to untrustworthy.
    """

    verdict: Verdict
    counts: tuple[int, int]


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "Leaf | Split"
    right: "Leaf | Split"


@dataclass(frozen=True)
class DecisionTree:
    root: Leaf | Split
    n_features: int
    max_depth: int
    min_leaf: int


def _leaf(count0: int, count1: int) -> Leaf:
    verdict = Verdict.TRUSTWORTHY if count1 > count0 else Verdict.UNTRUSTWORTHY
    return Leaf(verdict, (count0, count1))


def _grow(values, labels, depth: int, max_depth: int, min_leaf: int, backend) -> Leaf | Split:
    n = labels.shape[0]
    count1 = int(labels.sum())
    count0 = n - count1
    if count0 == 0 or count1 == 0 or depth >= max_depth or n < 2 * min_leaf:
        return _leaf(count0, count1)
    feature, threshold, _gain = backend.best_split(values, labels, min_leaf)
    if feature < 0:
        return _leaf(count0, count1)
    mask = values[:, feature] <= threshold
    left = _grow(
        np.ascontiguousarray(values[mask]), labels[mask], depth + 1, max_depth, min_leaf, backend
    )
    right = _grow(
        np.ascontiguousarray(values[~mask]), labels[~mask], depth + 1, max_depth, min_leaf, backend
    )
    return Split(int(feature), float(threshold), left, right)


def fit(values, labels, max_depth: int = 8, min_leaf: int = 2, backend=None) -> DecisionTree:
    """Grow a tree on an (n, d) feature matrix and 0/1 labels (1 = trustworthy).

    Splits need strictly positive information gain and children of at least
    ``min_leaf`` records; otherwise the node becomes a leaf. ``backend``
    overrides the kernel selected at import (used by the benchmark and the
    backend-parity tests).
    """
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    if min_leaf < 1:
        raise ValueError("min_leaf must be positive")
    values = np.ascontiguousarray(values, dtype=np.float64)
    labels = np.ascontiguousarray(labels, dtype=np.uint8)
    if values.ndim != 2:
        raise ValueError("feature matrix must be two-dimensional")
    if labels.ndim != 1 or labels.shape[0] != values.shape[0]:
        raise ValueError("labels must align with feature rows")
    if values.shape[0] == 0:
        raise EmptyDataset("cannot train on an empty dataset")
    if backend is None:
        backend = _default_backend
    root = _grow(values, labels, 0, max_depth, min_leaf, backend)
    return DecisionTree(root, int(values.shape[1]), max_depth, min_leaf)


def predict(tree: DecisionTree, features: Sequence[float]) -> Verdict:
    """Route a feature vector to a leaf; go left when value <= threshold."""
    if len(features) != tree.n_features:
        raise ValueError(
            f"expected {tree.n_features} features, got {len(features)}"
        )
    node = tree.root
    while isinstance(node, Split):
        node = node.left if features[node.feature] <= node.threshold else node.right
    return node.verdict


def depth(tree: DecisionTree) -> int:
    def walk(node) -> int:
        if isinstance(node, Leaf):
            return 0
        return 1 + max(walk(node.left), walk(node.right))

    return walk(tree.root)


def leaves(tree: DecisionTree) -> list[Leaf]:
    out: list[Leaf] = []

    def walk(node) -> None:
        if isinstance(node, Leaf):
            out.append(node)
        else:
            walk(node.left)
            walk(node.right)

    walk(tree.root)
    return out


def accuracy(tree: DecisionTree, values, labels) -> float:
    """Fraction of rows whose predicted verdict matches the 0/1 label."""
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.uint8)
    if labels.shape[0] == 0:
        raise EmptyDataset("cannot score an empty dataset")
    hits = 0
    for row, lab in zip(values, labels):
        wants = Verdict.TRUSTWORTHY if lab else Verdict.UNTRUSTWORTHY
        if predict(tree, row) is wants:
            hits += 1
    return hits / labels.shape[0]
