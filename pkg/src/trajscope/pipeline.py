"""Dataset-level orchestration: one Analysis object ties a cleaned dataset to
its vectors, cached node scores, zoned combinations, and comparison reports.

Datasets are immutable after ingestion, so every product here is a pure
function of (dataset, analytics config); the caches only avoid recomputation.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import catalog
from .comparison import (ComparisonReport, SampleWindow, compare_zones,
                         extract_sample, shared_feature_range)
from .forest import ForestConfig
from .ingest import Dataset, Trajectory
from .outliers import (DbosConfig, FrequencyMatrix, NodeScoreCache, NodeScores,
                       ZonedScore, frequency_matrix, score_combination)
from .taxonomy import Combination, TaxonomyNode
from .vectorize import VectorizedDataset, vectorize_dataset


def format_float(x: float) -> str:
    """Shortest round-trippable decimal form; keeps CSV output bit-exact."""
    return repr(float(x))


class Analysis:
    """Lazy, memoized analytics over one immutable dataset."""

    def __init__(self, dataset: Dataset, dbos: DbosConfig | None = None,
                 forest: ForestConfig | None = None,
                 window_before: int = 5, window_after: int = 4,
                 vectors: VectorizedDataset | None = None):
        self.dataset = dataset
        self.dbos = dbos or DbosConfig()
        self.forest = forest or ForestConfig()
        self.window_before = window_before
        self.window_after = window_after
        self.vectors = vectors if vectors is not None else vectorize_dataset(dataset)
        self._cache = NodeScoreCache(self.vectors, self.dbos)
        self._zoned: dict[str, list[ZonedScore]] = {}
        self._compared: dict[tuple[str, int, int], ComparisonReport] = {}

    def node_scores(self, node: TaxonomyNode) -> NodeScores:
        return self._cache.get(node)

    def zoned_scores(self, combo: Combination) -> list[ZonedScore]:
        if combo.slug not in self._zoned:
            self._zoned[combo.slug] = score_combination(
                self.vectors, combo, cache=self._cache)
        return self._zoned[combo.slug]

    def heatmap(self) -> FrequencyMatrix:
        return frequency_matrix(self.vectors, cache=self._cache)

    def compare(self, combo: Combination, zone_a: int, zone_b: int) -> ComparisonReport:
        key = (combo.slug, zone_a, zone_b)
        if key not in self._compared:
            self._compared[key] = compare_zones(
                self.vectors, combo, zone_a, zone_b,
                forest_config=self.forest, zoned=self.zoned_scores(combo))
        return self._compared[key]

    def trajectory(self, traj_id: str) -> Trajectory:
        try:
            return self.dataset.trajectories[traj_id]
        except KeyError:
            raise KeyError(f"unknown trajectory id: {traj_id!r}") from None

    def sample(self, traj_id: str, variable: str) -> SampleWindow:
        return extract_sample(self.trajectory(traj_id), variable,
                              before=self.window_before, after=self.window_after)

    def paired_samples(self, traj_ids: list[str], variable: str):
        windows = [self.sample(tid, variable) for tid in traj_ids]
        return windows, shared_feature_range(windows)


# --- file formats ---------------------------------------------------------------

VECTOR_HEADER = ["trajectory_id", *catalog.VARIABLE_NAMES]
ZONED_HEADER = ["trajectory_id", "combination", "x", "y", "zone"]
NODE_SCORE_HEADER = ["trajectory_id", "node", "score"]


def write_vectors_csv(vd: VectorizedDataset, out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(VECTOR_HEADER)
    for tid, row in zip(vd.ids, vd.matrix):
        writer.writerow([tid, *(format_float(v) for v in row)])


def read_vectors_csv(source) -> VectorizedDataset:
    frame = pd.read_csv(source, float_precision="round_trip", dtype={"trajectory_id": str})
    if list(frame.columns) != VECTOR_HEADER:
        raise ValueError("vectors csv does not match the 72-variable catalog header")
    return VectorizedDataset(ids=frame["trajectory_id"].tolist(),
                             matrix=frame[list(catalog.VARIABLE_NAMES)].to_numpy(dtype=float))


def write_zoned_csv(zoned: list[ZonedScore], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(ZONED_HEADER)
    for zs in zoned:
        writer.writerow([zs.trajectory_id, zs.combination,
                         format_float(zs.x), format_float(zs.y), zs.zone])


def write_node_scores_csv(scores: NodeScores, out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(NODE_SCORE_HEADER)
    for tid, s in zip(scores.ids, scores.scores):
        writer.writerow([tid, scores.node.value, format_float(s)])


def write_points_csv(dataset: Dataset, out: io.TextIOBase) -> None:
    """Normalized cleaned point table; round-trips through the csv parser."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["trajectory_id", "timestamp", "lat", "lon"])
    for traj in dataset.trajectories.values():
        for i in range(len(traj)):
            writer.writerow([traj.traj_id, format_float(traj.t[i]),
                             format_float(traj.lat[i]), format_float(traj.lon[i])])


def write_importance_columns_csv(report: ComparisonReport, out: io.TextIOBase) -> None:
    """Long-format dump of the two importance columns."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["axis", "variable", "importance"])
    for axis, column in (("x", report.column_x), ("y", report.column_y)):
        for name, value in column:
            writer.writerow([axis, name, format_float(value)])


def heatmap_to_json(fm: FrequencyMatrix) -> str:
    return json.dumps(fm.to_jsonable(), indent=2)
