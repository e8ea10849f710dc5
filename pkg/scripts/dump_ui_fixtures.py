#!/usr/bin/env python3
"""Record real service responses as frontend test fixtures.

Builds the bundled synthetic demo dataset, drives the JSON API in-process,
and writes every response the workbench workflow test needs into
frontend/tests/fixtures/. Re-run after changing the engine or the demo
generator so the UI tests keep asserting against genuine server output.
"""
from __future__ import annotations

import io
import json
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "scripts"))

from fastapi.testclient import TestClient

from make_synthetic import build
from trajscope.config import AppConfig
from trajscope.pipeline import write_points_csv
from trajscope.service import create_app

FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def dump(name: str, doc) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(doc, indent=2))
    print(f"wrote {name}")


def main() -> int:
    dataset = build(per_group=4, seed=3)
    buffer = io.StringIO()
    write_points_csv(dataset, buffer)

    with tempfile.TemporaryDirectory() as tmp:
        csv_path = Path(tmp) / "demo.csv"
        csv_path.write_text(buffer.getvalue())
        client = TestClient(create_app(AppConfig(data_dir=str(Path(tmp) / "data"))))
        created = client.post("/api/datasets", json={
            "path": str(csv_path), "format": "csv", "name": "synthetic-demo"})
        created.raise_for_status()
        dataset_id = created.json()["dataset"]["id"]

        dump("datasets.json", client.get("/api/datasets").json())
        heatmap = client.get(f"/api/datasets/{dataset_id}/heatmap").json()
        dump("heatmap.json", heatmap)

        # choose the combination/zone pair with the fattest thin side so the
        # comparison is trainable
        best = None
        for slug, row in zip(heatmap["combinations"], heatmap["counts"]):
            zones = sorted(range(4), key=lambda z: -row[z])[:2]
            score = min(row[zones[0]], row[zones[1]])
            if best is None or score > best[2]:
                best = (slug, zones, score)
        slug, zones, _ = best
        zone_a, zone_b = sorted(zones)

        scores = client.get(f"/api/datasets/{dataset_id}/scores",
                            params={"combo": slug}).json()
        dump("scores.json", scores)

        compare = client.post(f"/api/datasets/{dataset_id}/compare",
                              json={"combo": slug, "zone_a": zone_a,
                                    "zone_b": zone_b}).json()
        dump("compare.json", compare)

        tid_a = next(s["trajectory_id"] for s in scores["scores"] if s["zone"] == zone_a)
        tid_b = next(s["trajectory_id"] for s in scores["scores"] if s["zone"] == zone_b)
        for tid in (tid_a, tid_b):
            doc = client.get(f"/api/datasets/{dataset_id}/trajectories/{tid}").json()
            dump(f"trajectory_{tid}.json", doc)

        variable = compare["column_x"][0]["variable"]
        sample = client.get(f"/api/datasets/{dataset_id}/sample",
                            params=[("tid", tid_a), ("tid", tid_b),
                                    ("variable", variable)]).json()
        dump("sample.json", sample)

        signature_variable = "distance_geometry_2_1"
        signature = client.get(f"/api/datasets/{dataset_id}/sample",
                               params=[("tid", tid_a), ("tid", tid_b),
                                       ("variable", signature_variable)]).json()
        dump("sample_signature.json", signature)

        dump("meta.json", {
            "dataset_id": dataset_id,
            "combination": slug,
            "zone_a": zone_a,
            "zone_b": zone_b,
            "tid_a": tid_a,
            "tid_b": tid_b,
            "variable": variable,
            "signature_variable": signature_variable,
        })
    return 0


if __name__ == "__main__":
    sys.exit(main())
