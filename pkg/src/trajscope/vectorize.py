"""Turn trajectories into 72-dimensional statistical feature vectors.

Three blocks of 19 series statistics (speed, acceleration, turning angles)
plus 15 straightness signatures. A signature DG(k, j) splits the point
sequence into k contiguous parts of near-equal point count (remainders go to
the earliest parts) and measures chord length over path length of part j:
1 means the part is a perfectly straight great-circle run, values near 0 mean
the part folds back on itself.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog
from .geo import haversine_m
from .ingest import Dataset, Trajectory
from .stats import STATISTIC_NAMES, summarize_series
from .taxonomy import TaxonomyNode


@dataclass(frozen=True)
class FeatureVector:
    trajectory_id: str
    values: np.ndarray  # length 72, catalog order


def partition_bounds(n_points: int, k: int) -> list[tuple[int, int]]:
    """Split n_points into k contiguous (start, stop) slices.

    Part sizes differ by at most one; the remainder goes to the earliest
    parts, e.g. 23 points with k=5 -> sizes 5,5,5,4,4.
    """
    if k < 1 or n_points < 1:
        raise ValueError("need n_points >= 1 and k >= 1")
    base, extra = divmod(n_points, k)
    bounds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        bounds.append((start, start + size))
        start += size
    return bounds


def distance_geometry_signatures(traj: Trajectory) -> np.ndarray:
    """The 15 straightness signatures DG(k, j) in catalog order, each in [0, 1].

    Parts with fewer than 2 points or zero path length count as straight (1.0).
    """
    n = len(traj)
    if n < 2:
        raise ValueError("need at least 2 points for distance geometry")
    seg = np.atleast_1d(haversine_m(traj.lon[:-1], traj.lat[:-1],
                                    traj.lon[1:], traj.lat[1:]))
    out = np.empty(len(catalog.SIGNATURE_PAIRS))
    for idx, (k, j) in enumerate(catalog.SIGNATURE_PAIRS):
        start, stop = partition_bounds(n, k)[j - 1]
        if stop - start < 2:
            out[idx] = 1.0
            continue
        path = float(np.sum(seg[start:stop - 1]))
        if path == 0.0:
            out[idx] = 1.0
            continue
        chord = haversine_m(traj.lon[start], traj.lat[start],
                            traj.lon[stop - 1], traj.lat[stop - 1])
        out[idx] = min(chord / path, 1.0)
    return out


def vectorize_trajectory(traj: Trajectory) -> FeatureVector:
    """The full 72-value vector for one trajectory (features must be present)."""
    if traj.features is None:
        raise ValueError(f"trajectory {traj.traj_id!r} has no computed features")
    series = {
        "speed": traj.features.speed,
        "acceleration": traj.features.acceleration,
        "angles": traj.features.angle,
    }
    values = np.empty(len(catalog.VARIABLES))
    pos = 0
    for base in catalog.STAT_BASES:
        stats = summarize_series(series[base])
        for stat in STATISTIC_NAMES:
            values[pos] = stats[stat]
            pos += 1
    values[pos:] = distance_geometry_signatures(traj)
    return FeatureVector(trajectory_id=traj.traj_id, values=values)


@dataclass
class VectorizedDataset:
    ids: list[str]
    matrix: np.ndarray  # shape (n_trajectories, 72), catalog column order

    def __len__(self) -> int:
        return len(self.ids)

    def row(self, traj_id: str) -> np.ndarray:
        return self.matrix[self.ids.index(traj_id)]


def vectorize_dataset(dataset: Dataset) -> VectorizedDataset:
    ids = dataset.ids()
    matrix = np.empty((len(ids), len(catalog.VARIABLES)))
    for i, traj_id in enumerate(ids):
        matrix[i] = vectorize_trajectory(dataset.trajectories[traj_id]).values
    return VectorizedDataset(ids=ids, matrix=matrix)


_NODE_BASES: dict[TaxonomyNode, tuple[str, ...]] = {
    TaxonomyNode.SPEED: ("speed",),
    TaxonomyNode.ACCELERATION: ("acceleration",),
    TaxonomyNode.INDENTATION: ("angles",),
    TaxonomyNode.CURVATURE: ("distance_geometry",),
    TaxonomyNode.KINEMATIC: ("speed", "acceleration"),
    TaxonomyNode.GEOMETRIC: ("angles", "distance_geometry"),
}


def node_subspace(node: TaxonomyNode) -> tuple[int, ...]:
    """Catalog indices of the variables describing one taxonomy node.

    Leaves map to their own block (19 or 15 variables); roots to the union
    of their two children (Kinematic 38, Geometric 34).
    """
    indices: list[int] = []
    bases = _NODE_BASES[node]
    for i, v in enumerate(catalog.VARIABLES):
        if v.base in bases:
            indices.append(i)
    return tuple(indices)
