"""HTTP/JSON workbench service.

Endpoints (all JSON, numbers as 64-bit floats, zones as integers 0-3):

    GET  /api/health
    GET  /api/schema
    GET  /api/datasets
    POST /api/datasets              multipart upload or {"path": ...} body
    GET  /api/datasets/{id}/heatmap
    GET  /api/datasets/{id}/scores?combo=acceleration-speed
    POST /api/datasets/{id}/compare {"combo": ..., "zone_a": 0, "zone_b": 1}
    GET  /api/datasets/{id}/trajectories/{tid}
    GET  /api/datasets/{id}/sample?tid=...&variable=...   (tid may repeat)

Errors: 404 unknown ids, 409 invalid combinations, 422 violated zone
preconditions, 400 malformed input; every error body is
{"error": {"code": ..., "message": ...}}.

The registry (dataset ids, ingestion configs, artifact paths) persists as
JSON under the data directory and survives restarts. Dataset ids hash the
raw bytes together with the ingestion config, and all computed caches key on
the analytics config hash, so nothing stale is ever served. Identical
concurrent requests share one computation (per-key single flight) and
repeated compare calls return byte-identical bodies.
"""
from __future__ import annotations

import dataclasses
import hashlib
import io
import json
import shutil
import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.concurrency import run_in_threadpool

from . import __version__
from .comparison import ComparisonError
from .config import AppConfig, SCHEMA_VERSION, ingest_config_from_dict
from .ingest import IngestConfig, IngestError, parse_dataset
from .pipeline import Analysis, write_vectors_csv
from .taxonomy import CombinationError, combination_from_slug, valid_combinations
from .catalog import VARIABLE_NAMES


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CompareRequest(BaseModel):
    combo: str
    zone_a: int
    zone_b: int


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": {"code": code, "message": message}})


class DatasetRegistry:
    """Persisted index of ingested datasets plus in-memory Analysis cache."""

    def __init__(self, config: AppConfig):
        self.config = config
        self.root = Path(config.data_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.index_path = self.root / "registry.json"
        self.entries: dict[str, dict] = {}
        self._analyses: dict[tuple[str, str], Analysis] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._global = threading.Lock()
        if self.index_path.exists():
            self.entries = json.loads(self.index_path.read_text())

    def _save(self) -> None:
        self.index_path.write_text(json.dumps(self.entries, indent=2))

    def _lock_for(self, key: str) -> threading.Lock:
        with self._global:
            return self._locks.setdefault(key, threading.Lock())

    def ingest(self, raw: bytes, fmt: str, name: str,
               ingest_config: IngestConfig) -> tuple[dict, dict]:
        digest = hashlib.sha256(raw + ingest_config.canonical_json().encode()
                                + fmt.encode()).hexdigest()[:16]
        with self._lock_for(f"ingest:{digest}"):
            if digest in self.entries:
                entry = self.entries[digest]
                report = json.loads((self.root / digest / "report.json").read_text())
                return entry, report

            dataset, report = parse_dataset(io.StringIO(raw.decode("utf-8")), fmt,
                                            config=ingest_config, name=name,
                                            source_label=f"upload:{name}")
            ddir = self.root / digest
            ddir.mkdir(parents=True, exist_ok=True)
            (ddir / f"raw.{fmt}").write_bytes(raw)
            (ddir / "report.json").write_text(report.to_json())
            analysis = self._build_analysis(dataset)
            with open(ddir / "vectors.csv", "w", encoding="utf-8", newline="") as fh:
                write_vectors_csv(analysis.vectors, fh)
            entry = {
                "id": digest,
                "name": name,
                "format": fmt,
                "ingest_config": dataclasses.asdict(ingest_config),
                "counts": {"trajectories": report.trajectories, "points": report.points},
                "paths": {"raw": str(ddir / f"raw.{fmt}"),
                          "vectors": str(ddir / "vectors.csv"),
                          "report": str(ddir / "report.json")},
            }
            self.entries[digest] = entry
            self._save()
            self._analyses[(digest, self.config.analytics_hash())] = analysis
            return entry, dataclasses.asdict(report)

    def _build_analysis(self, dataset) -> Analysis:
        return Analysis(dataset, dbos=self.config.dbos, forest=self.config.forest,
                        window_before=self.config.window.before,
                        window_after=self.config.window.after)

    def analysis(self, dataset_id: str) -> Analysis:
        if dataset_id not in self.entries:
            raise ApiError(404, "unknown_dataset", f"no dataset with id {dataset_id!r}")
        key = (dataset_id, self.config.analytics_hash())
        with self._lock_for(f"analysis:{dataset_id}"):
            if key not in self._analyses:
                entry = self.entries[dataset_id]
                raw = Path(entry["paths"]["raw"]).read_bytes()
                dataset, _ = parse_dataset(
                    io.StringIO(raw.decode("utf-8")), entry["format"],
                    config=ingest_config_from_dict(entry["ingest_config"]),
                    name=entry["name"], source_label=entry["paths"]["raw"])
                self._analyses[key] = self._build_analysis(dataset)
            return self._analyses[key]


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    registry = DatasetRegistry(config)
    app = FastAPI(title="trajscope", version=__version__)
    compare_bodies: dict[str, bytes] = {}
    compare_locks: dict[str, threading.Lock] = {}
    compare_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def handle_api_error(_: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(CombinationError)
    async def handle_combo_error(_: Request, exc: CombinationError):
        return _error_response(409, "invalid_combination", str(exc))

    @app.exception_handler(ComparisonError)
    async def handle_comparison_error(_: Request, exc: ComparisonError):
        return _error_response(422, "zone_preconditions", str(exc))

    @app.exception_handler(IngestError)
    async def handle_ingest_error(_: Request, exc: IngestError):
        return _error_response(400, "ingest_failed", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_: Request, exc: RequestValidationError):
        return _error_response(400, "malformed_input", str(exc.errors()[:3]))

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__,
                "schema_version": SCHEMA_VERSION}

    @app.get("/api/schema")
    def schema():
        return {
            "schema_version": SCHEMA_VERSION,
            "variables": list(VARIABLE_NAMES),
            "zones": [0, 1, 2, 3],
            "combinations": [c.slug for c in valid_combinations()],
            "openapi": app.openapi(),
        }

    @app.get("/api/datasets")
    def list_datasets():
        return {"datasets": list(registry.entries.values())}

    @app.post("/api/datasets")
    async def add_dataset(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise ApiError(400, "missing_file", "multipart body needs a 'file' part")
            raw = await upload.read()
            fmt = form.get("format", "csv")
            name = form.get("name", getattr(upload, "filename", None) or "dataset")
            cfg_doc = json.loads(form.get("config", "{}"))
        else:
            try:
                body = await request.json()
            except json.JSONDecodeError:
                raise ApiError(400, "malformed_json", "request body is not valid JSON")
            path = body.get("path")
            if not path:
                raise ApiError(400, "missing_path", "JSON body needs a 'path' key")
            try:
                raw = Path(path).read_bytes()
            except OSError as exc:
                raise ApiError(400, "unreadable_path", str(exc))
            fmt = body.get("format", "csv")
            name = body.get("name", Path(path).stem)
            cfg_doc = body.get("config", {})
        try:
            ingest_config = ingest_config_from_dict(cfg_doc)
        except TypeError as exc:
            raise ApiError(400, "bad_ingest_config", str(exc))
        entry, report = await run_in_threadpool(
            registry.ingest, raw, fmt, name, ingest_config)
        return {"dataset": entry, "report": report}

    @app.get("/api/datasets/{dataset_id}/heatmap")
    def heatmap(dataset_id: str):
        return registry.analysis(dataset_id).heatmap().to_jsonable()

    @app.get("/api/datasets/{dataset_id}/scores")
    def scores(dataset_id: str, combo: str):
        analysis = registry.analysis(dataset_id)
        combination = combination_from_slug(combo)
        zoned = analysis.zoned_scores(combination)
        return {
            "combination": combination.slug,
            "x_node": combination.x_node.value,
            "y_node": combination.y_node.value,
            "scores": [dataclasses.asdict(z) for z in zoned],
        }

    @app.post("/api/datasets/{dataset_id}/compare")
    def compare(dataset_id: str, body: CompareRequest):
        analysis = registry.analysis(dataset_id)
        combination = combination_from_slug(body.combo)
        cache_key = json.dumps([dataset_id, config.analytics_hash(),
                                combination.slug, body.zone_a, body.zone_b])
        with compare_lock:
            key_lock = compare_locks.setdefault(cache_key, threading.Lock())
        with key_lock:  # single flight: concurrent duplicates share one run
            cached = compare_bodies.get(cache_key)
            if cached is None:
                report = analysis.compare(combination, body.zone_a, body.zone_b)
                cached = json.dumps(report.to_jsonable(), sort_keys=True).encode()
                compare_bodies[cache_key] = cached
        return Response(content=cached, media_type="application/json")

    @app.get("/api/datasets/{dataset_id}/trajectories/{tid}")
    def trajectory(dataset_id: str, tid: str):
        analysis = registry.analysis(dataset_id)
        try:
            traj = analysis.trajectory(tid)
        except KeyError as exc:
            raise ApiError(404, "unknown_trajectory", str(exc))
        f = traj.features.as_dict()
        return {
            "trajectory_id": traj.traj_id,
            "lon": traj.lon.tolist(),
            "lat": traj.lat.tolist(),
            "t": traj.t.tolist(),
            "features": {k: v.tolist() for k, v in f.items()},
        }

    @app.get("/api/datasets/{dataset_id}/sample")
    def sample(dataset_id: str, request: Request, variable: str):
        tids = request.query_params.getlist("tid")
        if not tids:
            raise ApiError(400, "missing_tid", "sample needs at least one tid")
        if len(tids) > 2:
            raise ApiError(400, "too_many_tids", "sample compares at most two trajectories")
        analysis = registry.analysis(dataset_id)
        try:
            windows, shared = analysis.paired_samples(tids, variable)
        except KeyError as exc:
            raise ApiError(404, "unknown_trajectory", str(exc))
        except ValueError as exc:
            raise ApiError(400, "bad_variable", str(exc))
        return {
            "variable": variable,
            "windows": [w.to_jsonable() for w in windows],
            "shared_range": {k: list(v) for k, v in shared.items()},
        }

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")

    return app
