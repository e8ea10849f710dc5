"""Trajectory ingestion: parse CSV/GeoJSON point data, clean it, and derive
the five per-point feature series (speed, acceleration, angle, distance,
bearing).

Cleaning rules
--------------
* rows with unparseable timestamps or out-of-range coordinates are dropped
  and counted,
* duplicate (id, timestamp) pairs collapse to the first occurrence,
* timestamps are strictly increasing within a trajectory after cleaning,
* trajectories with fewer than 2 surviving points are rejected (their rows
  count as dropped).

Padding convention for the feature series: values that need a predecessor
(speed, distance, bearing, acceleration) or a successor (angle) are 0 at the
affected indices, so all five series share the trajectory's length.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict
from typing import IO, Iterable, NamedTuple

import numpy as np
import pandas as pd

from .geo import haversine_m, initial_bearing_deg, bearing_change_deg


class IngestError(ValueError):
    """Raised for unusable inputs: unknown format, zero valid rows, bad timing."""


class TrajectoryPoint(NamedTuple):
    lon: float
    lat: float
    t: float


@dataclass
class FeatureSeries:
    """Per-point feature series; every array has the trajectory's length."""
    speed: np.ndarray         # m/s
    acceleration: np.ndarray  # m/s^2
    angle: np.ndarray         # turning deviation, degrees in [0, 180]
    distance: np.ndarray      # meters from previous point
    bearing: np.ndarray       # forward azimuth, degrees in [0, 360)

    def as_dict(self) -> dict[str, np.ndarray]:
        return {
            "speed": self.speed,
            "acceleration": self.acceleration,
            "angle": self.angle,
            "distance": self.distance,
            "bearing": self.bearing,
        }


@dataclass
class Trajectory:
    traj_id: str
    lon: np.ndarray
    lat: np.ndarray
    t: np.ndarray
    features: FeatureSeries | None = None

    def __len__(self) -> int:
        return int(self.lon.size)

    def point(self, i: int) -> TrajectoryPoint:
        return TrajectoryPoint(float(self.lon[i]), float(self.lat[i]), float(self.t[i]))

    @property
    def points(self) -> list[TrajectoryPoint]:
        return [self.point(i) for i in range(len(self))]


@dataclass
class Provenance:
    source: str
    config_hash: str


@dataclass
class Dataset:
    name: str
    trajectories: dict[str, Trajectory]
    provenance: Provenance

    def __len__(self) -> int:
        return len(self.trajectories)

    def ids(self) -> list[str]:
        return list(self.trajectories)


@dataclass
class IngestionReport:
    rows_read: int = 0
    rows_dropped: int = 0
    duplicates_collapsed: int = 0
    trajectories: int = 0
    points: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass(frozen=True)
class IngestConfig:
    """Column/property mapping plus optional numeric row filter.

    CSV: `id_col`, `time_col`, `lat_col`, `lon_col` name the required columns;
    timestamps may be ISO-8601 strings or epoch seconds.
    GeoJSON: LineString features with `id_property` (falls back to the feature
    `id` member) and a coordinate-aligned `time_property` array.
    `filter_col`/`filter_min`/`filter_max` keep only rows whose numeric value
    falls in the closed range (used e.g. to restrict storm seasons).
    """
    id_col: str = "trajectory_id"
    time_col: str = "timestamp"
    lat_col: str = "lat"
    lon_col: str = "lon"
    id_property: str = "id"
    time_property: str = "timestamps"
    filter_col: str | None = None
    filter_min: float | None = None
    filter_max: float | None = None

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


IBTRACS_CONFIG = IngestConfig(
    id_col="SID", time_col="ISO_TIME", lat_col="LAT", lon_col="LON",
    filter_col="SEASON", filter_min=2004, filter_max=2024,
)


def _parse_timestamps(raw: pd.Series) -> np.ndarray:
    """Epoch seconds from a string column; NaN marks unparseable entries.

    Numeric strings are taken as epoch seconds directly, everything else goes
    through ISO-8601 parsing (naive timestamps are treated as UTC).
    """
    text = raw.astype("string").str.strip()
    numeric = pd.to_numeric(text, errors="coerce")
    out = numeric.to_numpy(dtype=float)
    todo = numeric.isna() & text.notna()
    if todo.any():
        parsed = pd.to_datetime(text[todo], errors="coerce", utc=True)
        secs = np.full(int(todo.sum()), np.nan)
        good = parsed.notna().to_numpy()
        secs[good] = parsed[good].astype("int64").to_numpy() / 1e9
        out[np.flatnonzero(todo.to_numpy())] = secs
    out[text.isna().to_numpy()] = np.nan
    return out


def _frame_to_dataset(frame: pd.DataFrame, name: str, provenance: Provenance,
                      report: IngestionReport) -> Dataset:
    """Shared cleaning tail: frame has columns id (str), t, lat, lon (float)."""
    ok = (
        np.isfinite(frame["t"].to_numpy())
        & (frame["lat"].to_numpy() >= -90.0) & (frame["lat"].to_numpy() <= 90.0)
        & (frame["lon"].to_numpy() >= -180.0) & (frame["lon"].to_numpy() <= 180.0)
        & np.isfinite(frame["lat"].to_numpy()) & np.isfinite(frame["lon"].to_numpy())
    )
    report.rows_dropped += int((~ok).sum())
    frame = frame.loc[ok]

    # Stable sort keeps first occurrence of duplicate timestamps first.
    frame = frame.sort_values(["id", "t"], kind="stable")
    dup = frame.duplicated(subset=["id", "t"], keep="first")
    report.duplicates_collapsed += int(dup.sum())
    frame = frame.loc[~dup]

    trajectories: dict[str, Trajectory] = {}
    for traj_id, group in frame.groupby("id", sort=False):
        if len(group) < 2:
            report.rows_dropped += len(group)
            continue
        traj = Trajectory(
            traj_id=str(traj_id),
            lon=group["lon"].to_numpy(dtype=float),
            lat=group["lat"].to_numpy(dtype=float),
            t=group["t"].to_numpy(dtype=float),
        )
        traj.features = compute_point_features(traj)
        trajectories[traj.traj_id] = traj
        report.points += len(traj)

    if not trajectories:
        raise IngestError("no valid rows survived cleaning")
    report.trajectories = len(trajectories)
    return Dataset(name=name, trajectories=trajectories, provenance=provenance)


def _parse_csv(source: IO[bytes] | IO[str], config: IngestConfig,
               report: IngestionReport) -> pd.DataFrame:
    table = pd.read_csv(source, dtype=str, skipinitialspace=True)
    missing = [c for c in (config.id_col, config.time_col, config.lat_col, config.lon_col)
               if c not in table.columns]
    if missing:
        raise IngestError(f"csv is missing required columns: {missing}")
    report.rows_read = len(table)

    if config.filter_col is not None:
        vals = pd.to_numeric(table[config.filter_col], errors="coerce")
        keep = vals.notna()
        if config.filter_min is not None:
            keep &= vals >= config.filter_min
        if config.filter_max is not None:
            keep &= vals <= config.filter_max
        report.rows_dropped += int((~keep).sum())
        table = table.loc[keep]

    return pd.DataFrame({
        "id": table[config.id_col].astype(str),
        "t": _parse_timestamps(table[config.time_col]),
        "lat": pd.to_numeric(table[config.lat_col], errors="coerce"),
        "lon": pd.to_numeric(table[config.lon_col], errors="coerce"),
    })


def _parse_geojson(source: IO[bytes] | IO[str], config: IngestConfig,
                   report: IngestionReport) -> pd.DataFrame:
    doc = json.load(source)
    features = doc.get("features")
    if doc.get("type") != "FeatureCollection" or not isinstance(features, list):
        raise IngestError("geojson input must be a FeatureCollection")

    ids, times, lats, lons = [], [], [], []
    for idx, feat in enumerate(features):
        geom = feat.get("geometry") or {}
        props = feat.get("properties") or {}
        coords = geom.get("coordinates") or []
        if geom.get("type") != "LineString":
            continue
        traj_id = props.get(config.id_property, feat.get("id", f"feature_{idx}"))
        stamps = props.get(config.time_property)
        if not isinstance(stamps, list) or len(stamps) != len(coords):
            report.rows_read += len(coords)
            report.rows_dropped += len(coords)
            continue
        for coord, stamp in zip(coords, stamps):
            report.rows_read += 1
            try:
                lon, lat = float(coord[0]), float(coord[1])
            except (TypeError, ValueError, IndexError):
                report.rows_dropped += 1
                continue
            ids.append(str(traj_id))
            times.append(stamp)
            lats.append(lat)
            lons.append(lon)

    return pd.DataFrame({
        "id": pd.Series(ids, dtype=str),
        "t": _parse_timestamps(pd.Series(times, dtype=object).astype(str)),
        "lat": np.asarray(lats, dtype=float) if lats else np.array([], dtype=float),
        "lon": np.asarray(lons, dtype=float) if lons else np.array([], dtype=float),
    })


def parse_dataset(source: IO[bytes] | IO[str], fmt: str,
                  config: IngestConfig | None = None, name: str = "dataset",
                  source_label: str = "<stream>") -> tuple[Dataset, IngestionReport]:
    """Parse a CSV or GeoJSON byte/text stream into a cleaned Dataset.

    Returns the dataset and an ingestion report with drop/collapse counts.
    Raises IngestError for unknown formats or when no valid rows survive.
    """
    config = config or IngestConfig()
    report = IngestionReport()
    import hashlib
    cfg_hash = hashlib.sha256(config.canonical_json().encode()).hexdigest()[:12]
    provenance = Provenance(source=source_label, config_hash=cfg_hash)

    if fmt == "csv":
        frame = _parse_csv(source, config, report)
    elif fmt == "geojson":
        frame = _parse_geojson(source, config, report)
    else:
        raise IngestError(f"unknown format: {fmt!r} (expected 'csv' or 'geojson')")
    dataset = _frame_to_dataset(frame, name, provenance, report)
    return dataset, report


def haversine_distance(a: TrajectoryPoint, b: TrajectoryPoint) -> float:
    """Great-circle distance in meters between two trajectory points."""
    return haversine_m(a.lon, a.lat, b.lon, b.lat)


def initial_bearing(a: TrajectoryPoint, b: TrajectoryPoint) -> float:
    """Forward azimuth from a to b in [0, 360); 0 for coincident points."""
    return initial_bearing_deg(a.lon, a.lat, b.lon, b.lat)


def compute_point_features(traj: Trajectory) -> FeatureSeries:
    """Derive the five per-point series for a cleaned trajectory.

    distance[i] and bearing[i] describe the segment into point i (i >= 1);
    speed[i] = distance[i] / dt[i]; acceleration[i] = dspeed / dt for i >= 2;
    angle[i] folds the bearing change around point i into [0, 180].
    Raises IngestError on non-positive time deltas (cleaning should have
    removed them).
    """
    n = len(traj)
    if n < 2:
        raise IngestError(f"trajectory {traj.traj_id!r} has fewer than 2 points")
    dt = np.diff(traj.t)
    if np.any(dt <= 0):
        raise IngestError(f"trajectory {traj.traj_id!r} has non-positive time deltas")

    seg = haversine_m(traj.lon[:-1], traj.lat[:-1], traj.lon[1:], traj.lat[1:])
    seg = np.atleast_1d(seg)
    seg_bearing = np.atleast_1d(
        initial_bearing_deg(traj.lon[:-1], traj.lat[:-1], traj.lon[1:], traj.lat[1:]))

    distance = np.zeros(n)
    distance[1:] = seg
    speed = np.zeros(n)
    speed[1:] = seg / dt
    acceleration = np.zeros(n)
    if n > 2:
        acceleration[2:] = np.diff(speed)[1:] / dt[1:]
    bearing = np.zeros(n)
    bearing[1:] = seg_bearing
    angle = np.zeros(n)
    if n > 2:
        angle[1:-1] = bearing_change_deg(seg_bearing[:-1], seg_bearing[1:])

    return FeatureSeries(speed=speed, acceleration=acceleration, angle=angle,
                         distance=distance, bearing=bearing)


def dataset_from_arrays(name: str, items: Iterable[tuple[str, np.ndarray, np.ndarray, np.ndarray]],
                        source: str = "<memory>") -> Dataset:
    """Build a Dataset directly from (id, lon, lat, t) arrays; used by tests
    and synthetic-data scripts. Applies the same feature computation as
    parse_dataset but no cleaning."""
    trajectories: dict[str, Trajectory] = {}
    for traj_id, lon, lat, t in items:
        traj = Trajectory(traj_id=str(traj_id), lon=np.asarray(lon, float),
                          lat=np.asarray(lat, float), t=np.asarray(t, float))
        traj.features = compute_point_features(traj)
        trajectories[traj.traj_id] = traj
    return Dataset(name=name, trajectories=trajectories,
                   provenance=Provenance(source=source, config_hash="direct"))
