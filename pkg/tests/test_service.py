import io
import json

import pytest
from fastapi.testclient import TestClient

from trajscope.config import AppConfig
from trajscope.pipeline import write_points_csv
from trajscope.service import create_app

from conftest import synthetic_dataset


@pytest.fixture
def app_client(tmp_path, rng):
    config = AppConfig(data_dir=str(tmp_path / "data"))
    app = create_app(config)
    client = TestClient(app)
    ds = synthetic_dataset(14, rng, n_points=25)
    buffer = io.StringIO()
    write_points_csv(ds, buffer)
    csv_path = tmp_path / "upload.csv"
    csv_path.write_text(buffer.getvalue())
    response = client.post("/api/datasets",
                           json={"path": str(csv_path), "format": "csv", "name": "synthetic"})
    assert response.status_code == 200, response.text
    dataset_id = response.json()["dataset"]["id"]
    return client, dataset_id, tmp_path, config


def test_health(app_client):
    client, *_ = app_client
    doc = client.get("/api/health").json()
    assert doc["status"] == "ok"
    assert "version" in doc


def test_schema_endpoint(app_client):
    client, *_ = app_client
    doc = client.get("/api/schema").json()
    assert len(doc["variables"]) == 72
    assert len(doc["combinations"]) == 7
    assert doc["zones"] == [0, 1, 2, 3]


def test_dataset_listing_and_report(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get("/api/datasets").json()
    assert [d["id"] for d in doc["datasets"]] == [dataset_id]
    assert doc["datasets"][0]["counts"]["trajectories"] == 14


def test_multipart_upload(app_client, rng, tmp_path):
    client, *_ = app_client
    ds = synthetic_dataset(5, rng, n_points=20, name="upload2")
    buffer = io.StringIO()
    write_points_csv(ds, buffer)
    response = client.post(
        "/api/datasets",
        files={"file": ("upload2.csv", buffer.getvalue().encode(), "text/csv")},
        data={"format": "csv", "name": "upload2", "config": "{}"})
    assert response.status_code == 200, response.text
    assert response.json()["report"]["trajectories"] == 5


def test_heatmap_endpoint(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/heatmap").json()
    assert len(doc["combinations"]) == 7
    assert all(sum(row) == 14 for row in doc["counts"])


def test_scores_endpoint(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/scores",
                     params={"combo": "acceleration-speed"}).json()
    assert doc["x_node"] == "acceleration"
    assert doc["y_node"] == "speed"
    assert len(doc["scores"]) == 14
    for entry in doc["scores"]:
        assert 0.0 <= entry["x"] <= 1.0
        assert entry["zone"] in (0, 1, 2, 3)


def test_invalid_combo_is_409(app_client):
    client, dataset_id, *_ = app_client
    response = client.get(f"/api/datasets/{dataset_id}/scores",
                          params={"combo": "kinematic-speed"})
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "invalid_combination"


def test_unknown_dataset_is_404(app_client):
    client, *_ = app_client
    response = client.get("/api/datasets/doesnotexist/heatmap")
    assert response.status_code == 404


def test_compare_same_zone_is_422(app_client):
    client, dataset_id, *_ = app_client
    response = client.post(f"/api/datasets/{dataset_id}/compare",
                           json={"combo": "geometric-kinematic", "zone_a": 1, "zone_b": 1})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "zone_preconditions"


def test_compare_thin_zone_is_422(app_client):
    client, dataset_id, *_ = app_client
    heat = client.get(f"/api/datasets/{dataset_id}/heatmap").json()
    row = heat["counts"][heat["combinations"].index("geometric-kinematic")]
    thin = [z for z in range(4) if row[z] < 2]
    fat = [z for z in range(4) if row[z] >= 2]
    if not thin:
        pytest.skip("all zones populated in this draw")
    response = client.post(f"/api/datasets/{dataset_id}/compare",
                           json={"combo": "geometric-kinematic",
                                 "zone_a": fat[0], "zone_b": thin[0]})
    assert response.status_code == 422


def test_compare_idempotent_bytes(app_client):
    client, dataset_id, *_ = app_client
    heat = client.get(f"/api/datasets/{dataset_id}/heatmap").json()
    row = heat["counts"][heat["combinations"].index("geometric-kinematic")]
    zones = [z for z in range(4) if row[z] >= 2]
    body = {"combo": "geometric-kinematic", "zone_a": zones[0], "zone_b": zones[1]}
    first = client.post(f"/api/datasets/{dataset_id}/compare", json=body)
    second = client.post(f"/api/datasets/{dataset_id}/compare", json=body)
    assert first.status_code == 200, first.text
    assert first.content == second.content
    doc = first.json()
    assert set(doc["metrics"]) == {"f1", "accuracy", "precision", "recall", "test_size"}


def test_malformed_compare_is_400(app_client):
    client, dataset_id, *_ = app_client
    response = client.post(f"/api/datasets/{dataset_id}/compare",
                           content=b"not json", headers={"content-type": "application/json"})
    assert response.status_code == 400
    response = client.post(f"/api/datasets/{dataset_id}/compare",
                           json={"combo": "geometric-kinematic", "zone_a": 0})
    assert response.status_code == 400


def test_trajectory_endpoint(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/trajectories/synthetic_0").json()
    assert doc["trajectory_id"] == "synthetic_0"
    assert len(doc["lon"]) == len(doc["lat"]) == len(doc["t"]) == 25
    assert set(doc["features"]) == {"speed", "acceleration", "angle", "distance", "bearing"}
    missing = client.get(f"/api/datasets/{dataset_id}/trajectories/nope")
    assert missing.status_code == 404


def test_sample_endpoint_single(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/sample",
                     params={"tid": "synthetic_2", "variable": "speed_mean"}).json()
    assert len(doc["windows"]) == 1
    window = doc["windows"][0]
    assert window["end"] - window["start"] <= 10
    assert "shared_range" in doc


def test_sample_endpoint_pair_shares_range(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/sample",
                     params=[("tid", "synthetic_1"), ("tid", "synthetic_3"),
                             ("variable", "acceleration_sd")]).json()
    assert len(doc["windows"]) == 2
    lo, hi = doc["shared_range"]["acceleration"]
    for window in doc["windows"]:
        values = window["features"]["acceleration"]
        assert min(values) >= lo - 1e-12
        assert max(values) <= hi + 1e-12


def test_sample_signature_variable_routing(app_client):
    client, dataset_id, *_ = app_client
    doc = client.get(f"/api/datasets/{dataset_id}/sample",
                     params={"tid": "synthetic_0", "variable": "distance_geometry_2_1"}).json()
    assert doc["windows"][0]["is_signature_segment"] is True


def test_registry_survives_restart(app_client):
    client, dataset_id, tmp_path, config = app_client
    fresh = TestClient(create_app(AppConfig(data_dir=config.data_dir)))
    doc = fresh.get("/api/datasets").json()
    assert [d["id"] for d in doc["datasets"]] == [dataset_id]
    heat = fresh.get(f"/api/datasets/{dataset_id}/heatmap")
    assert heat.status_code == 200


def test_reingesting_same_bytes_is_idempotent(app_client, tmp_path):
    client, dataset_id, *_ = app_client
    csv_path = tmp_path / "upload.csv"
    response = client.post("/api/datasets",
                           json={"path": str(csv_path), "format": "csv", "name": "synthetic"})
    assert response.status_code == 200
    assert response.json()["dataset"]["id"] == dataset_id
    assert len(client.get("/api/datasets").json()["datasets"]) == 1
