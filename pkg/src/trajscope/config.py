"""Runtime configuration for the service and CLI.

A JSON config file plus TRAJSCOPE_* environment overrides feed one
AppConfig; analytics knobs (outlier scoring, forest, sample windows) hash
into the cache keys so changing them never reuses stale artifacts.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .forest import ForestConfig
from .ingest import IngestConfig
from .outliers import DbosConfig

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class WindowConfig:
    before: int = 5
    after: int = 4


@dataclass
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    data_dir: str = "./trajscope-data"
    static_dir: str | None = None
    dbos: DbosConfig = field(default_factory=DbosConfig)
    forest: ForestConfig = field(default_factory=ForestConfig)
    window: WindowConfig = field(default_factory=WindowConfig)

    def analytics_hash(self) -> str:
        """Hash of every knob that affects computed results."""
        doc = {
            "dbos": dataclasses.asdict(self.dbos),
            "forest": dataclasses.asdict(self.forest),
            "window": dataclasses.asdict(self.window),
        }
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:12]


_ENV_OVERRIDES = {
    "TRAJSCOPE_HOST": ("host", str),
    "TRAJSCOPE_PORT": ("port", int),
    "TRAJSCOPE_DATA_DIR": ("data_dir", str),
    "TRAJSCOPE_STATIC_DIR": ("static_dir", str),
    "TRAJSCOPE_SEED": ("forest.seed", int),
}


def _nested_dataclass(cls, doc: dict):
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name in doc:
            kwargs[f.name] = doc[f.name]
    return cls(**kwargs)


def load_config(path: str | Path | None = None,
                env: dict[str, str] | None = None) -> AppConfig:
    """AppConfig from an optional JSON file plus environment overrides."""
    env = os.environ if env is None else env
    doc: dict = {}
    if path is not None:
        doc = json.loads(Path(path).read_text())
    config = AppConfig(
        host=doc.get("host", AppConfig.host),
        port=doc.get("port", AppConfig.port),
        data_dir=doc.get("data_dir", AppConfig.data_dir),
        static_dir=doc.get("static_dir", None),
        dbos=_nested_dataclass(DbosConfig, doc.get("dbos", {})),
        forest=_nested_dataclass(ForestConfig, doc.get("forest", {})),
        window=_nested_dataclass(WindowConfig, doc.get("window", {})),
    )
    for var, (target, cast) in _ENV_OVERRIDES.items():
        if var not in env:
            continue
        value = cast(env[var])
        if target == "forest.seed":
            config.forest = dataclasses.replace(config.forest, seed=value)
        else:
            setattr(config, target, value)
    return config


def ingest_config_from_dict(doc: dict) -> IngestConfig:
    return _nested_dataclass(IngestConfig, doc)
