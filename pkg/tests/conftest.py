from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trajscope.ingest import Trajectory, compute_point_features, dataset_from_arrays


def make_trajectory(traj_id: str, lon, lat, t=None) -> Trajectory:
    lon = np.asarray(lon, dtype=float)
    lat = np.asarray(lat, dtype=float)
    if t is None:
        t = np.arange(lon.size, dtype=float) * 60.0
    traj = Trajectory(traj_id=traj_id, lon=lon, lat=np.asarray(lat, dtype=float),
                      t=np.asarray(t, dtype=float))
    traj.features = compute_point_features(traj)
    return traj


def straight_equator_trajectory(traj_id: str = "straight", n: int = 10,
                                step_deg: float = 0.01) -> Trajectory:
    lon = np.arange(n) * step_deg
    lat = np.zeros(n)
    return make_trajectory(traj_id, lon, lat)


def synthetic_dataset(n_traj: int, rng: np.random.Generator, n_points: int = 30,
                      speed_scale: float = 1.0, jitter: float = 0.0005,
                      name: str = "synthetic"):
    """Random-walk trajectories for pipeline tests."""
    items = []
    for i in range(n_traj):
        lon0, lat0 = rng.uniform(-10, 10, 2)
        steps = rng.normal(0.0, jitter, (n_points - 1, 2)) * speed_scale
        path = np.vstack([[lon0, lat0], np.cumsum(steps, axis=0) + [lon0, lat0]])
        t = np.cumsum(np.concatenate([[0.0], rng.uniform(30, 90, n_points - 1)]))
        items.append((f"{name}_{i}", path[:, 0], np.clip(path[:, 1], -89, 89), t))
    return dataset_from_arrays(name, items)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
