"""Zone-vs-zone comparison reports and the variable-anchored sample windows
that link a statistical variable back to a short stretch of map geometry.

compare_zones trains the forest on the trajectories of two zones (labels:
zone_a -> 0, zone_b -> 1) over the union of the combination's two feature
subspaces and splits the resulting importances into one column per axis.

For map views, a statistic variable anchors on the point whose base-series
value lies closest to the computed statistic; the excerpt shows 5 points
before and 4 after the anchor (clamped at the ends). Distance-geometry
variables instead highlight the exact part of the trajectory their signature
was computed from.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog
from .forest import EvalMetrics, ForestConfig, evaluate, fit_forest, gini_importance, stratified_split
from .ingest import Dataset, Trajectory
from .outliers import DbosConfig, NodeScoreCache, ZonedScore, score_combination
from .stats import summarize_series
from .taxonomy import Combination
from .vectorize import VectorizedDataset, node_subspace, partition_bounds


class ComparisonError(ValueError):
    """Raised when a zone comparison violates its preconditions."""


@dataclass
class ComparisonReport:
    combination: str
    zone_a: int
    zone_b: int
    metrics: EvalMetrics
    column_x: list[tuple[str, float]]  # (variable name, importance), descending
    column_y: list[tuple[str, float]]
    trained_features: list[str]

    def to_jsonable(self) -> dict:
        return {
            "combination": self.combination,
            "zone_a": self.zone_a,
            "zone_b": self.zone_b,
            "metrics": self.metrics.to_jsonable(),
            "column_x": [{"variable": n, "importance": v} for n, v in self.column_x],
            "column_y": [{"variable": n, "importance": v} for n, v in self.column_y],
            "trained_features": self.trained_features,
        }


@dataclass
class SampleWindow:
    """A short trajectory excerpt anchored on a statistical variable."""
    trajectory_id: str
    variable: str
    anchor: int                 # index into the full trajectory
    start: int                  # window start (inclusive)
    end: int                    # window end (exclusive)
    lon: np.ndarray
    lat: np.ndarray
    t: np.ndarray
    features: dict[str, np.ndarray]
    statistic_value: float
    is_signature_segment: bool = False

    def __len__(self) -> int:
        return self.end - self.start

    def to_jsonable(self) -> dict:
        return {
            "trajectory_id": self.trajectory_id,
            "variable": self.variable,
            "anchor": self.anchor,
            "start": self.start,
            "end": self.end,
            "lon": self.lon.tolist(),
            "lat": self.lat.tolist(),
            "t": self.t.tolist(),
            "features": {k: v.tolist() for k, v in self.features.items()},
            "statistic_value": self.statistic_value,
            "is_signature_segment": self.is_signature_segment,
        }


def compare_zones(vd: VectorizedDataset, combo: Combination, zone_a: int,
                  zone_b: int, forest_config: ForestConfig | None = None,
                  dbos_config: DbosConfig | None = None,
                  cache: NodeScoreCache | None = None,
                  zoned: list[ZonedScore] | None = None) -> ComparisonReport:
    """Train a forest to separate two zones and report split importances.

    Needs zone_a != zone_b and at least 2 trajectories in each zone under the
    given combination.
    """
    if zone_a == zone_b:
        raise ComparisonError("cannot compare a zone against itself")
    for z in (zone_a, zone_b):
        if z not in (0, 1, 2, 3):
            raise ComparisonError(f"zone must be 0..3, got {z}")
    forest_config = forest_config or ForestConfig()
    if zoned is None:
        zoned = score_combination(vd, combo, config=dbos_config, cache=cache)

    by_zone = {zone_a: [], zone_b: []}
    for i, zs in enumerate(zoned):
        if zs.zone in by_zone:
            by_zone[zs.zone].append(i)
    for z, members in by_zone.items():
        if len(members) < 2:
            raise ComparisonError(
                f"insufficient members for stratified split: zone {z} has "
                f"{len(members)} trajectories")

    feature_idx = sorted(set(node_subspace(combo.x_node)) | set(node_subspace(combo.y_node)))
    rows = by_zone[zone_a] + by_zone[zone_b]
    X = vd.matrix[np.asarray(rows)][:, feature_idx]
    y = np.array([0] * len(by_zone[zone_a]) + [1] * len(by_zone[zone_b]))

    try:
        X_tr, X_te, y_tr, y_te = stratified_split(X, y, forest_config)
        forest = fit_forest(X_tr, y_tr, forest_config)
    except ValueError as exc:
        # tiny zones can survive the >=2 check yet leave too little to train on
        raise ComparisonError(f"insufficient members to train on: {exc}") from exc
    metrics = evaluate(forest, X_te, y_te)
    importances = gini_importance(forest)

    names = [catalog.VARIABLE_NAMES[i] for i in feature_idx]
    x_set = set(node_subspace(combo.x_node))
    column_x, column_y = [], []
    for local, global_idx in enumerate(feature_idx):
        entry = (names[local], float(importances[local]))
        (column_x if global_idx in x_set else column_y).append(entry)
    column_x.sort(key=lambda e: (-e[1], catalog.INDEX_BY_NAME[e[0]]))
    column_y.sort(key=lambda e: (-e[1], catalog.INDEX_BY_NAME[e[0]]))

    return ComparisonReport(combination=combo.slug, zone_a=zone_a, zone_b=zone_b,
                            metrics=metrics, column_x=column_x, column_y=column_y,
                            trained_features=names)


_BASE_SERIES = {"speed": "speed", "acceleration": "acceleration", "angles": "angle"}


def variable_anchor(traj: Trajectory, variable: str) -> tuple[int, float]:
    """Index of the point whose base-series value is closest to the variable's
    statistic, plus the statistic itself. Ties break to the lowest index."""
    var = catalog.variable(variable)
    if var.base == "distance_geometry":
        raise ValueError(
            f"{variable} is a signature variable; use segment_for_signature")
    if traj.features is None:
        raise ValueError(f"trajectory {traj.traj_id!r} has no computed features")
    series = traj.features.as_dict()[_BASE_SERIES[var.base]]
    value = summarize_series(series)[var.statistic]
    anchor = int(np.argmin(np.abs(series - value)))
    return anchor, float(value)


def _window(traj: Trajectory, variable: str, anchor: int, start: int, end: int,
            value: float, is_signature: bool, ) -> SampleWindow:
    f = traj.features.as_dict()
    return SampleWindow(
        trajectory_id=traj.traj_id, variable=variable, anchor=anchor,
        start=start, end=end,
        lon=traj.lon[start:end], lat=traj.lat[start:end], t=traj.t[start:end],
        features={k: v[start:end] for k, v in f.items()},
        statistic_value=value, is_signature_segment=is_signature)


def extract_sample(traj: Trajectory, variable: str, before: int = 5,
                   after: int = 4) -> SampleWindow:
    """The anchored excerpt: indices [anchor - before, anchor + after] clamped
    to the series bounds. Signature variables route to their exact segment."""
    var = catalog.variable(variable)
    if var.base == "distance_geometry":
        return segment_for_signature(traj, var.signature, variable=variable)
    anchor, value = variable_anchor(traj, variable)
    start = max(0, anchor - before)
    end = min(len(traj), anchor + after + 1)
    return _window(traj, variable, anchor, start, end, value, False)


def segment_for_signature(traj: Trajectory, signature: tuple[int, int],
                          variable: str | None = None) -> SampleWindow:
    """The j-th of k near-equal parts, exactly as the signature scored it."""
    k, j = signature
    if not (1 <= j <= k <= 5):
        raise ValueError(f"invalid signature index: ({k}, {j})")
    variable = variable or f"distance_geometry_{k}_{j}"
    start, end = partition_bounds(len(traj), k)[j - 1]
    from .vectorize import distance_geometry_signatures
    sig_idx = catalog.SIGNATURE_PAIRS.index((k, j))
    value = float(distance_geometry_signatures(traj)[sig_idx])
    return _window(traj, variable, start, start, end, value, True)


def shared_feature_range(windows: list[SampleWindow]) -> dict[str, tuple[float, float]]:
    """Per-feature (min, max) over a group of windows; paired map views color
    against this union range so both sides share one scale."""
    out: dict[str, tuple[float, float]] = {}
    for name in ("speed", "acceleration", "angle", "distance", "bearing"):
        values = np.concatenate([w.features[name] for w in windows])
        out[name] = (float(values.min()), float(values.max()))
    return out
