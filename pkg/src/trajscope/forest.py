"""From-scratch random-forest classifier for two-class zone comparison.

CART trees on bootstrap resamples, Gini impurity weighted by balanced class
weights (w_c = n / (2 * n_c), computed once from the full training labels),
floor(sqrt(m)) candidate features per split, midpoint thresholds over sorted
distinct values. Feature importance is mean decrease in weighted impurity
(MDI), normalized per tree and again over the forest.

Everything is deterministic: tree t draws from its own stream seeded by
(seed, t), ties in impurity decrease break toward the lowest feature index
and then the lowest threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 200
    max_depth: int = 10
    class_weight: str = "balanced"
    seed: int = 42
    test_fraction: float = 0.2
    features_per_split: int | None = None  # None -> floor(sqrt(m))
    min_samples_leaf: int = 1
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if not (0.0 < self.test_fraction < 1.0):
            raise ValueError("test_fraction must be in (0, 1)")


@dataclass
class TreeNode:
    """Internal split or leaf. Leaves carry the weighted class votes."""
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    votes: np.ndarray | None = None  # class-weighted counts at a leaf

    @property
    def is_leaf(self) -> bool:
        return self.votes is not None


@dataclass
class Forest:
    trees: list[TreeNode]
    config: ForestConfig
    n_features: int
    classes: np.ndarray
    class_weights: np.ndarray
    importances_per_tree: np.ndarray  # (n_trees, n_features), each row sums to 1 or 0
    n_splits: int

    @property
    def has_splits(self) -> bool:
        return self.n_splits > 0


@dataclass
class EvalMetrics:
    f1: float                     # macro-averaged over the two classes
    accuracy: float
    precision: dict[int, float]
    recall: dict[int, float]
    test_size: int

    def to_jsonable(self) -> dict:
        return {
            "f1": self.f1,
            "accuracy": self.accuracy,
            "precision": {str(k): v for k, v in self.precision.items()},
            "recall": {str(k): v for k, v in self.recall.items()},
            "test_size": self.test_size,
        }


def stratified_split(X: np.ndarray, y: np.ndarray,
                     config: ForestConfig | None = None):
    """Deterministic stratified train/test split.

    Per-class test count = round(class_count * test_fraction), at least 1 and
    at most class_count - 1. Every class needs >= 2 members.
    Returns (X_train, X_test, y_train, y_test).
    """
    config = config or ForestConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    classes, counts = np.unique(y, return_counts=True)
    if np.any(counts < 2):
        bad = classes[counts < 2].tolist()
        raise ValueError(f"insufficient members for stratified split: class(es) {bad}")
    rng = np.random.default_rng(config.seed)
    test_idx = []
    for cls, count in zip(classes, counts):
        members = np.flatnonzero(y == cls)
        take = int(round(count * config.test_fraction))
        take = min(max(take, 1), count - 1)
        test_idx.append(rng.permutation(members)[:take])
    test_idx = np.sort(np.concatenate(test_idx))
    mask = np.zeros(y.size, dtype=bool)
    mask[test_idx] = True
    return X[~mask], X[mask], y[~mask], y[mask]


def _gini(weighted_counts: np.ndarray) -> float:
    total = weighted_counts.sum()
    if total <= 0:
        return 0.0
    p = weighted_counts / total
    return float(1.0 - np.sum(p * p))


def _best_split(values: np.ndarray, labels01: np.ndarray, weights: np.ndarray,
                min_leaf: int = 1):
    """Best (threshold, impurity_decrease, left_w_counts, right_w_counts) for
    one feature, or None when the node cannot be split on it.

    Vectorized scan: sort once, cumulative weighted class sums, evaluate all
    distinct-value boundaries at once. The decrease is in absolute weighted
    units (parent_W * gini_parent - left_W * gini_left - right_W * gini_right).
    """
    order = np.argsort(values, kind="stable")
    v = values[order]
    if v[0] == v[-1]:
        return None
    w = weights[order]
    lab = labels01[order]
    w1 = np.cumsum(w * lab)
    w0 = np.cumsum(w * (1 - lab))
    cut = np.flatnonzero(v[:-1] < v[1:])  # split after position i
    if min_leaf > 1:
        sizes_left = cut + 1
        cut = cut[(sizes_left >= min_leaf) & (v.size - sizes_left >= min_leaf)]
    if cut.size == 0:
        return None

    l0, l1 = w0[cut], w1[cut]
    t0, t1 = w0[-1], w1[-1]
    r0, r1 = t0 - l0, t1 - l1
    lw = l0 + l1
    rw = r0 + r1
    total = t0 + t1
    gini_parent = 1.0 - ((t0 / total) ** 2 + (t1 / total) ** 2)
    gini_left = 1.0 - ((l0 / lw) ** 2 + (l1 / lw) ** 2)
    gini_right = 1.0 - ((r0 / rw) ** 2 + (r1 / rw) ** 2)
    decrease = total * gini_parent - lw * gini_left - rw * gini_right

    best = int(np.argmax(decrease))  # first (lowest threshold) wins ties
    if decrease[best] <= 1e-15:
        return None
    pos = cut[best]
    threshold = (v[pos] + v[pos + 1]) / 2.0
    return threshold, float(decrease[best]), np.array([l0[best], l1[best]]), \
        np.array([r0[best], r1[best]])


def _grow(X, labels01, weights, indices, depth, config, rng, importances):
    node_labels = labels01[indices]
    node_weights = weights[indices]
    counts = np.array([node_weights[node_labels == 0].sum(),
                       node_weights[node_labels == 1].sum()])
    if (depth >= config.max_depth or indices.size < 2 * config.min_samples_leaf
            or counts[0] == 0 or counts[1] == 0):
        return TreeNode(votes=counts), 0

    m = X.shape[1]
    n_candidates = config.features_per_split or max(1, int(math.floor(math.sqrt(m))))
    n_candidates = min(n_candidates, m)
    candidates = np.sort(rng.choice(m, size=n_candidates, replace=False))

    best = None
    best_feature = -1
    for feat in candidates:  # ascending: ties keep the lowest feature index
        found = _best_split(X[indices, feat], node_labels, node_weights,
                            config.min_samples_leaf)
        if found is None:
            continue
        if best is None or found[1] > best[1] + 1e-15:
            best = found
            best_feature = int(feat)
    if best is None:
        return TreeNode(votes=counts), 0

    threshold, decrease, _, _ = best
    importances[best_feature] += decrease
    go_left = X[indices, best_feature] <= threshold
    left, nl = _grow(X, labels01, weights, indices[go_left], depth + 1,
                     config, rng, importances)
    right, nr = _grow(X, labels01, weights, indices[~go_left], depth + 1,
                      config, rng, importances)
    return TreeNode(feature=best_feature, threshold=threshold,
                    left=left, right=right), nl + nr + 1


def fit_forest(X: np.ndarray, y: np.ndarray,
               config: ForestConfig | None = None) -> Forest:
    """Train the forest on a binary-labeled matrix.

    Requires n >= 4 samples, m >= 1 features, and both classes present.
    """
    config = config or ForestConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    n, m = X.shape
    if n < 4:
        raise ValueError("need at least 4 training samples")
    if m < 1:
        raise ValueError("need at least 1 feature")
    classes = np.unique(y)
    if classes.size != 2:
        raise ValueError(f"need exactly 2 classes, got {classes.size}")

    labels01 = (y == classes[1]).astype(np.int8)
    if config.class_weight == "balanced":
        counts = np.array([(labels01 == 0).sum(), (labels01 == 1).sum()])
        class_weights = n / (2.0 * counts)
    else:
        class_weights = np.ones(2)
    weights = class_weights[labels01]

    trees: list[TreeNode] = []
    per_tree = np.zeros((config.n_trees, m))
    total_splits = 0
    for t in range(config.n_trees):
        rng = np.random.default_rng([config.seed, t])
        if config.bootstrap:
            sample = rng.integers(0, n, size=n)
        else:
            sample = np.arange(n)
        importances = np.zeros(m)
        root, n_splits = _grow(X, labels01, weights, sample, 0, config, rng,
                               importances)
        total_splits += n_splits
        if importances.sum() > 0:
            per_tree[t] = importances / importances.sum()
        trees.append(root)

    return Forest(trees=trees, config=config, n_features=m, classes=classes,
                  class_weights=class_weights, importances_per_tree=per_tree,
                  n_splits=total_splits)


def gini_importance(forest: Forest) -> np.ndarray:
    """Per-feature MDI importances, normalized to sum 1.

    A forest that never split (pure bootstrap leaves everywhere) yields the
    zero vector; callers can check forest.has_splits.
    """
    mean = forest.importances_per_tree.mean(axis=0)
    total = mean.sum()
    if total <= 0:
        return np.zeros(forest.n_features)
    return mean / total


def _predict_tree(node: TreeNode, row: np.ndarray) -> int:
    while not node.is_leaf:
        node = node.left if row[node.feature] <= node.threshold else node.right
    votes = node.votes
    return 0 if votes[0] >= votes[1] else 1


def predict(forest: Forest, X: np.ndarray) -> np.ndarray:
    """Majority vote over the trees' class-weighted leaf votes.

    Exact 100-100 splits break toward the first class label.
    """
    X = np.asarray(X, dtype=float)
    out = np.empty(X.shape[0], dtype=forest.classes.dtype)
    for i, row in enumerate(X):
        ones = sum(_predict_tree(t, row) for t in forest.trees)
        out[i] = forest.classes[1] if ones * 2 > len(forest.trees) else forest.classes[0]
    return out


def evaluate(forest: Forest, X_test: np.ndarray, y_test: np.ndarray) -> EvalMetrics:
    """Macro F1, accuracy, and per-class precision/recall on a test set."""
    y_test = np.asarray(y_test)
    if y_test.size == 0:
        raise ValueError("empty test set")
    pred = predict(forest, X_test)
    accuracy = float(np.mean(pred == y_test))
    precision: dict[int, float] = {}
    recall: dict[int, float] = {}
    f1s = []
    for cls in forest.classes:
        tp = int(np.sum((pred == cls) & (y_test == cls)))
        fp = int(np.sum((pred == cls) & (y_test != cls)))
        fn = int(np.sum((pred != cls) & (y_test == cls)))
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        precision[int(cls)] = p
        recall[int(cls)] = r
        f1s.append(2 * p * r / (p + r) if p + r else 0.0)
    return EvalMetrics(f1=float(np.mean(f1s)), accuracy=accuracy,
                       precision=precision, recall=recall,
                       test_size=int(y_test.size))


def train_and_evaluate(X: np.ndarray, y: np.ndarray,
                       config: ForestConfig | None = None):
    """Stratified split, fit, evaluate; returns (forest, metrics, importances)."""
    config = config or ForestConfig()
    X_tr, X_te, y_tr, y_te = stratified_split(X, y, config)
    forest = fit_forest(X_tr, y_tr, config)
    metrics = evaluate(forest, X_te, y_te)
    return forest, metrics, gini_importance(forest)


def grid_search(X: np.ndarray, y: np.ndarray, config: ForestConfig | None = None,
                n_folds: int = 5,
                n_trees_grid=(50, 100, 200, 300),
                max_depth_grid=(5, 10, 15),
                features_grid=("sqrt", "log2")) -> list[dict]:
    """Cross-validated tuning over the forest's main knobs.

    4 x 3 x 2 = 24 candidates, each fitted n_folds times on stratified folds;
    results sorted by mean macro F1, best first.
    """
    config = config or ForestConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    m = X.shape[1]
    rng = np.random.default_rng(config.seed)
    classes = np.unique(y)
    folds = [[] for _ in range(n_folds)]
    for cls in classes:
        members = rng.permutation(np.flatnonzero(y == cls))
        for i, idx in enumerate(members):
            folds[i % n_folds].append(idx)
    folds = [np.sort(np.array(f, dtype=int)) for f in folds]

    results = []
    for n_trees in n_trees_grid:
        for depth in max_depth_grid:
            for feats in features_grid:
                if feats == "sqrt":
                    fps = max(1, int(math.floor(math.sqrt(m))))
                else:
                    fps = max(1, int(math.floor(math.log2(m))))
                candidate = replace(config, n_trees=n_trees, max_depth=depth,
                                    features_per_split=fps)
                scores = []
                for fold in folds:
                    mask = np.zeros(y.size, dtype=bool)
                    mask[fold] = True
                    if np.unique(y[~mask]).size < 2 or fold.size == 0:
                        continue
                    forest = fit_forest(X[~mask], y[~mask], candidate)
                    scores.append(evaluate(forest, X[mask], y[mask]).f1)
                results.append({
                    "n_trees": n_trees, "max_depth": depth,
                    "features_per_split": fps, "features_rule": feats,
                    "mean_f1": float(np.mean(scores)) if scores else 0.0,
                    "folds": len(scores),
                })
    results.sort(key=lambda r: (-r["mean_f1"], r["n_trees"], r["max_depth"]))
    return results
