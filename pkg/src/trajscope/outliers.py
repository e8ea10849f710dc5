"""Distance-based outlier scoring and decision-boundary zones.

Per taxonomy node, each trajectory's feature-subspace vector is scored by how
isolated it sits among the others:

1. min-max normalize each subspace column (mixed units would otherwise
   dominate the distances; constant columns collapse to 0),
2. fix the radius r = mean Euclidean distance over all unordered pairs,
3. raw score = 1 - fraction of other vectors within r,
4. rank-transform the raw scores to a uniform grid ((rank - 0.5) / n with
   average ranks for ties) and min-max rescale so the axis fills [0, 1].

Scores close to 1 mark isolated, interesting trajectories; the whole pipeline
is deterministic and invariant under positive rescaling of the subspace.

A combination places two node scores on the unit square, split into four
zones: 0 = neither behavior pronounced, 1 = y-behavior dominant,
2 = x-behavior dominant, 3 = hybrid. All inequalities are strict, so boundary
points fall into the hybrid zone.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import rankdata

from .taxonomy import Combination, TaxonomyNode, valid_combinations
from .vectorize import VectorizedDataset, node_subspace


@dataclass(frozen=True)
class DbosConfig:
    """Knobs for the outlier-score pipeline.

    `radius_subsample`: when set and n exceeds it, estimate the radius from a
    random subsample of that size instead of all O(n^2) pairs (off by
    default; the estimator is seeded for determinism).
    """
    normalize_columns: bool = True
    radius_subsample: int | None = None
    seed: int = 42


@dataclass
class NodeScores:
    """Outlier scores of every trajectory within one node's subspace."""
    node: TaxonomyNode
    ids: list[str]
    scores: np.ndarray          # scaled to [0, 1]
    raw: np.ndarray             # 1 - neighbor fraction, before scaling
    neighbor_counts: np.ndarray
    radius: float

    def by_id(self) -> dict[str, float]:
        return {tid: float(s) for tid, s in zip(self.ids, self.scores)}


@dataclass(frozen=True)
class ZonedScore:
    trajectory_id: str
    combination: str  # slug
    x: float
    y: float
    zone: int


@dataclass
class FrequencyMatrix:
    """7 combinations x 4 zones trajectory counts; rows follow
    valid_combinations() order."""
    combinations: list[str]
    counts: np.ndarray  # shape (7, 4), dtype int

    def to_jsonable(self) -> dict:
        return {
            "combinations": self.combinations,
            "zones": [0, 1, 2, 3],
            "counts": self.counts.tolist(),
        }


def minmax_columns(matrix: np.ndarray) -> np.ndarray:
    """Scale each column to [0, 1]; constant columns map to 0."""
    lo = matrix.min(axis=0)
    span = matrix.max(axis=0) - lo
    out = np.zeros_like(matrix, dtype=float)
    nz = span > 0
    out[:, nz] = (matrix[:, nz] - lo[nz]) / span[nz]
    return out


def pairwise_radius(vectors: np.ndarray, config: DbosConfig | None = None) -> float:
    """Mean Euclidean distance over all unordered vector pairs."""
    config = config or DbosConfig()
    n = vectors.shape[0]
    if n < 2:
        raise ValueError("need at least 2 vectors for a pairwise radius")
    if config.radius_subsample is not None and n > config.radius_subsample:
        rng = np.random.default_rng(config.seed)
        idx = rng.choice(n, size=config.radius_subsample, replace=False)
        vectors = vectors[np.sort(idx)]
    return float(pdist(vectors).mean())


def dbos_raw(vectors: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Raw isolation scores and neighbor counts for a fixed radius.

    raw[i] = 1 - |{j != i : d(i, j) <= radius}| / (n - 1); isolated vectors
    score toward 1, densely packed ones toward 0.
    """
    n = vectors.shape[0]
    if n < 2:
        raise ValueError("need at least 2 vectors")
    if radius <= 0:
        raise ValueError("radius must be positive")
    dist = squareform(pdist(vectors))
    within = (dist <= radius).sum(axis=1) - 1  # drop self
    raw = 1.0 - within / (n - 1)
    return raw, within


def scale_scores(raw: np.ndarray) -> np.ndarray:
    """Rank-uniform transform then min-max rescale onto [0, 1].

    Ties share their average rank; if every raw score is equal the output is
    all zeros.
    """
    raw = np.asarray(raw, dtype=float)
    n = raw.size
    if n < 2:
        raise ValueError("need at least 2 scores to scale")
    uniform = (rankdata(raw, method="average") - 0.5) / n
    lo, hi = uniform.min(), uniform.max()
    if hi == lo:
        return np.zeros(n)
    return (uniform - lo) / (hi - lo)


def score_vectors(matrix: np.ndarray, config: DbosConfig | None = None):
    """The documented pipeline over a plain vector matrix.

    normalize columns -> mean-pairwise radius -> raw isolation score ->
    rank-uniform + min-max scaling. Identical vectors (zero radius) all
    score 0. Returns (scores, raw, neighbor_counts, radius).
    """
    config = config or DbosConfig()
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    if n < 2:
        raise ValueError("need at least 2 vectors to score")
    if config.normalize_columns:
        matrix = minmax_columns(matrix)
    radius = pairwise_radius(matrix, config)
    if radius <= 0:
        raw = np.zeros(n)
        counts = np.full(n, n - 1)
    else:
        raw, counts = dbos_raw(matrix, radius)
    return scale_scores(raw), raw, counts, radius


def score_node(vd: VectorizedDataset, node: TaxonomyNode,
               config: DbosConfig | None = None) -> NodeScores:
    """The full per-node pipeline over a vectorized dataset."""
    if len(vd) < 2:
        raise ValueError("need at least 2 trajectories to score")
    scores, raw, counts, radius = score_vectors(vd.matrix[:, node_subspace(node)],
                                                config)
    return NodeScores(node=node, ids=list(vd.ids), scores=scores,
                      raw=raw, neighbor_counts=counts, radius=radius)


def assign_zone(x: float, y: float) -> int:
    """Decision-boundary zone of a score pair, evaluated as an if/else chain.

    Strict inequalities throughout; anything on a boundary is hybrid (3).
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"scores must lie in [0, 1], got ({x}, {y})")
    if x < 0.5 and y < 0.5:
        return 0
    if y > 0.5 and x < (y - 0.5):
        return 1
    if x > 0.5 and y < (x - 0.5):
        return 2
    return 3


class NodeScoreCache:
    """Per-dataset memo of node scores; a node's scores are
    combination-independent so every combination reuses them. Writes are
    serialized per node so concurrent readers share one computation."""

    def __init__(self, vd: VectorizedDataset, config: DbosConfig | None = None):
        self.vd = vd
        self.config = config or DbosConfig()
        self._scores: dict[TaxonomyNode, NodeScores] = {}
        self._locks = {node: threading.Lock() for node in TaxonomyNode}

    def get(self, node: TaxonomyNode) -> NodeScores:
        found = self._scores.get(node)
        if found is not None:
            return found
        with self._locks[node]:
            if node not in self._scores:
                self._scores[node] = score_node(self.vd, node, self.config)
            return self._scores[node]


def score_combination(vd: VectorizedDataset, combo: Combination,
                      config: DbosConfig | None = None,
                      cache: NodeScoreCache | None = None) -> list[ZonedScore]:
    """Zoned (x, y) scores of every trajectory for one combination."""
    cache = cache or NodeScoreCache(vd, config)
    xs = cache.get(combo.x_node).scores
    ys = cache.get(combo.y_node).scores
    return [
        ZonedScore(trajectory_id=tid, combination=combo.slug,
                   x=float(x), y=float(y), zone=assign_zone(float(x), float(y)))
        for tid, x, y in zip(vd.ids, xs, ys)
    ]


def frequency_matrix(vd: VectorizedDataset, config: DbosConfig | None = None,
                     cache: NodeScoreCache | None = None) -> FrequencyMatrix:
    """Zone counts for all 7 combinations; every row sums to len(vd)."""
    cache = cache or NodeScoreCache(vd, config)
    combos = valid_combinations()
    counts = np.zeros((len(combos), 4), dtype=int)
    for i, combo in enumerate(combos):
        for zs in score_combination(vd, combo, cache=cache):
            counts[i, zs.zone] += 1
    return FrequencyMatrix(combinations=[c.slug for c in combos], counts=counts)
