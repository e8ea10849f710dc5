import io
import json

import numpy as np
import pytest

from trajscope.ingest import (IngestConfig, IngestError, Trajectory,
                              compute_point_features, parse_dataset)

from conftest import make_trajectory


CSV_BASIC = """trajectory_id,timestamp,lat,lon
a,2020-01-01T00:00:00Z,10.0,20.0
a,2020-01-01T00:01:00Z,10.1,20.0
b,1577836800,55.0,-3.0
b,1577836860,55.1,-3.1
"""


def parse_csv(text, **kwargs):
    return parse_dataset(io.StringIO(text), "csv", **kwargs)


def test_basic_csv_two_trajectories():
    ds, report = parse_csv(CSV_BASIC)
    assert len(ds) == 2
    assert len(ds.trajectories["a"]) == 2
    assert len(ds.trajectories["b"]) == 2
    assert report.rows_read == 4
    assert report.rows_dropped == 0
    assert report.points == 4
    assert report.trajectories == 2


def test_iso_and_epoch_timestamps_agree():
    ds, _ = parse_csv(CSV_BASIC)
    # 2020-01-01T00:00:00Z == epoch 1577836800
    assert ds.trajectories["a"].t[0] == ds.trajectories["b"].t[0] == 1577836800.0


def test_out_of_range_latitude_dropped():
    text = CSV_BASIC + "b,1577836920,95.0,-3.2\nb,1577836980,55.2,-3.2\n"
    ds, report = parse_csv(text)
    assert report.rows_dropped == 1
    assert len(ds.trajectories["b"]) == 3


def test_unparseable_timestamp_dropped():
    text = CSV_BASIC + "b,not-a-time,55.2,-3.2\n"
    _, report = parse_csv(text)
    assert report.rows_dropped == 1


def test_duplicate_timestamps_collapse_to_first():
    text = (
        "trajectory_id,timestamp,lat,lon\n"
        "a,100,10.0,20.0\n"
        "a,200,10.5,20.0\n"
        "a,200,89.0,99.0\n"  # in-range but duplicate: must be ignored
        "a,300,11.0,20.0\n"
    )
    ds, report = parse_csv(text)
    assert report.duplicates_collapsed == 1
    traj = ds.trajectories["a"]
    assert len(traj) == 3
    assert traj.lat[1] == 10.5


def test_single_point_trajectory_rejected():
    text = "trajectory_id,timestamp,lat,lon\na,100,10,20\na,200,10.1,20\nc,100,0,0\n"
    ds, report = parse_csv(text)
    assert "c" not in ds.trajectories
    assert report.rows_dropped == 1  # the lone c row


def test_zero_valid_rows_is_error():
    with pytest.raises(IngestError):
        parse_csv("trajectory_id,timestamp,lat,lon\na,bad,95,200\n")


def test_unknown_format_is_error():
    with pytest.raises(IngestError):
        parse_dataset(io.StringIO(""), "parquet")


def test_missing_column_is_error():
    with pytest.raises(IngestError):
        parse_csv("id,when,lat,lon\na,100,1,1\n")


def test_custom_column_mapping():
    text = "sid,when,y,x\nfoo,100,1.0,2.0\nfoo,200,1.1,2.1\n"
    config = IngestConfig(id_col="sid", time_col="when", lat_col="y", lon_col="x")
    ds, _ = parse_csv(text, config=config)
    assert list(ds.trajectories) == ["foo"]


def test_numeric_row_filter():
    text = (
        "trajectory_id,timestamp,lat,lon,season\n"
        "a,100,1,1,2003\na,200,1.1,1,2003\n"
        "b,100,2,2,2010\nb,200,2.1,2,2010\n"
    )
    config = IngestConfig(filter_col="season", filter_min=2004, filter_max=2024)
    ds, report = parse_csv(text, config=config)
    assert list(ds.trajectories) == ["b"]
    assert report.rows_dropped == 2


def test_rows_out_of_order_are_sorted():
    text = (
        "trajectory_id,timestamp,lat,lon\n"
        "a,300,12.0,20.0\n"
        "a,100,10.0,20.0\n"
        "a,200,11.0,20.0\n"
    )
    ds, _ = parse_csv(text)
    assert list(ds.trajectories["a"].t) == [100.0, 200.0, 300.0]
    assert list(ds.trajectories["a"].lat) == [10.0, 11.0, 12.0]


def test_geojson_round_trip():
    doc = {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "id": "ignored",
                "geometry": {"type": "LineString",
                             "coordinates": [[20.0, 10.0], [20.0, 10.1], [20.1, 10.1]]},
                "properties": {"id": "gj1", "timestamps": [0, 60, 120]},
            },
            {
                "type": "Feature",
                "geometry": {"type": "LineString",
                             "coordinates": [[0.0, 0.0], [0.1, 0.0]]},
                "properties": {"id": "gj2",
                               "timestamps": ["2020-01-01T00:00:00Z",
                                              "2020-01-01T01:00:00Z"]},
            },
        ],
    }
    ds, report = parse_dataset(io.StringIO(json.dumps(doc)), "geojson")
    assert set(ds.trajectories) == {"gj1", "gj2"}
    assert report.points == 5
    assert ds.trajectories["gj2"].t[1] - ds.trajectories["gj2"].t[0] == 3600.0


def test_geojson_misaligned_timestamps_dropped():
    doc = {
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature",
             "geometry": {"type": "LineString", "coordinates": [[0, 0], [1, 1]]},
             "properties": {"id": "bad", "timestamps": [0]}},
            {"type": "Feature",
             "geometry": {"type": "LineString", "coordinates": [[0, 0], [0.1, 0]]},
             "properties": {"id": "ok", "timestamps": [0, 60]}},
        ],
    }
    ds, report = parse_dataset(io.StringIO(json.dumps(doc)), "geojson")
    assert set(ds.trajectories) == {"ok"}
    assert report.rows_dropped == 2


def test_report_json_fields():
    _, report = parse_csv(CSV_BASIC)
    decoded = json.loads(report.to_json())
    assert set(decoded) == {"rows_read", "rows_dropped", "duplicates_collapsed",
                            "trajectories", "points"}


# --- point features ----------------------------------------------------------

def test_collinear_uniform_motion():
    traj = make_trajectory("uniform", [0.0, 0.01, 0.02], [0.0, 0.0, 0.0], [0, 60, 120])
    f = traj.features
    assert f.angle[1] == pytest.approx(0.0, abs=1e-9)
    assert f.speed[1] == pytest.approx(f.speed[2], rel=1e-9)
    assert f.acceleration[2] == pytest.approx(0.0, abs=1e-12)


def test_padding_convention():
    traj = make_trajectory("pad", [0.0, 0.01, 0.02, 0.03], [0.0, 0.0, 0.01, 0.01])
    f = traj.features
    n = len(traj)
    for series in (f.speed, f.acceleration, f.angle, f.distance, f.bearing):
        assert series.shape == (n,)
    assert f.speed[0] == 0.0
    assert f.acceleration[0] == 0.0 and f.acceleration[1] == 0.0
    assert f.angle[0] == 0.0 and f.angle[-1] == 0.0
    assert f.distance[0] == 0.0


def test_right_angle_turn():
    d = 0.001
    traj = make_trajectory("corner", [0.0, d, d], [0.0, 0.0, d])
    assert traj.features.angle[1] == pytest.approx(90.0, abs=1e-2)


def test_turn_away_from_315_azimuth():
    # east first, then a 315-degree azimuth leg: the bearing change folds to 135
    d = 0.001
    lon = [0.0, d, d - d * np.sin(np.pi / 4)]
    lat = [0.0, 0.0, d * np.cos(np.pi / 4)]
    traj = make_trajectory("pivot", lon, lat)
    assert traj.features.angle[1] == pytest.approx(135.0, abs=1e-2)


def test_feature_ranges(rng):
    from conftest import synthetic_dataset
    ds = synthetic_dataset(5, rng)
    for traj in ds.trajectories.values():
        f = traj.features
        assert np.all(f.speed >= 0)
        assert np.all(f.distance >= 0)
        assert np.all((f.angle >= 0) & (f.angle <= 180))
        assert np.all((f.bearing >= 0) & (f.bearing < 360))


def test_reversal_keeps_segment_distances():
    traj = make_trajectory("fwd", [0.0, 0.01, 0.03, 0.06], [0.0, 0.01, 0.0, 0.02])
    rev = make_trajectory("rev", traj.lon[::-1].copy(), traj.lat[::-1].copy())
    fwd_d = sorted(traj.features.distance[1:])
    rev_d = sorted(rev.features.distance[1:])
    assert np.allclose(fwd_d, rev_d, rtol=1e-12)


def test_nonpositive_time_delta_is_hard_error():
    traj = Trajectory("bad", np.array([0.0, 1.0]), np.array([0.0, 0.0]),
                      np.array([100.0, 100.0]))
    with pytest.raises(IngestError):
        compute_point_features(traj)


def test_two_point_trajectory_features():
    traj = make_trajectory("two", [0.0, 0.01], [0.0, 0.0], [0, 30])
    f = traj.features
    assert f.angle.tolist() == [0.0, 0.0]
    assert f.acceleration.tolist() == [0.0, 0.0]
    assert f.speed[1] > 0
    assert f.bearing[1] == pytest.approx(90.0)
