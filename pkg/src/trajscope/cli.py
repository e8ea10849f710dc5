"""Batch pipeline entry point.

Subcommands: prep, vectorize, score, heatmap, compare, sample, tune, serve.
Outputs are UTF-8 files (CSV per RFC 4180 with LF line endings); any module
error exits nonzero with one machine-readable JSON object on stderr. Every
randomized command takes --seed (default 42) and echoes its effective
configuration to stderr for reproducibility.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from contextlib import nullcontext
from pathlib import Path

from .comparison import ComparisonError
from .config import load_config
from .forest import ForestConfig, grid_search
from .ingest import (IBTRACS_CONFIG, IngestConfig, IngestError, parse_dataset)
from .pipeline import (Analysis, heatmap_to_json, read_vectors_csv,
                       write_importance_columns_csv, write_node_scores_csv,
                       write_points_csv, write_vectors_csv, write_zoned_csv)
from .taxonomy import CombinationError, TaxonomyNode, combination_from_slug
from .vectorize import vectorize_dataset


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="input file, or - for stdin")
    parser.add_argument("--format", default="csv", choices=["csv", "geojson"])
    parser.add_argument("--name", default="dataset")
    parser.add_argument("--preset", choices=["ibtracs"],
                        help="column mapping preset (ibtracs: SID/ISO_TIME/LAT/LON, seasons 2004-2024)")
    parser.add_argument("--id-col", default=None)
    parser.add_argument("--time-col", default=None)
    parser.add_argument("--lat-col", default=None)
    parser.add_argument("--lon-col", default=None)
    parser.add_argument("--id-property", default=None, help="geojson feature id property")
    parser.add_argument("--time-property", default=None, help="geojson timestamp array property")
    parser.add_argument("--filter-col", default=None)
    parser.add_argument("--filter-min", type=float, default=None)
    parser.add_argument("--filter-max", type=float, default=None)


def _ingest_config(args) -> IngestConfig:
    base = IBTRACS_CONFIG if args.preset == "ibtracs" else IngestConfig()
    overrides = {}
    for flag, field in (("id_col", "id_col"), ("time_col", "time_col"),
                        ("lat_col", "lat_col"), ("lon_col", "lon_col"),
                        ("id_property", "id_property"), ("time_property", "time_property"),
                        ("filter_col", "filter_col"), ("filter_min", "filter_min"),
                        ("filter_max", "filter_max")):
        value = getattr(args, flag)
        if value is not None:
            overrides[field] = value
    return dataclasses.replace(base, **overrides)


def _open_input(path: str):
    if path == "-":
        return nullcontext(sys.stdin)
    return open(path, "r", encoding="utf-8")


def _open_output(path: str | None):
    if path is None or path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _load_dataset(args):
    config = _ingest_config(args)
    with _open_input(args.input) as fh:
        return parse_dataset(fh, args.format, config=config, name=args.name,
                             source_label=args.input)


def _load_vectors(args):
    """Vectors either from a precomputed 73-column CSV or from raw input."""
    if getattr(args, "vectors", None):
        with _open_input(args.vectors) as fh:
            return read_vectors_csv(fh), None
    dataset, _ = _load_dataset(args)
    return vectorize_dataset(dataset), dataset


def _echo_config(args, extra: dict | None = None) -> None:
    doc = {"command": args.command, **(extra or {})}
    print(json.dumps({"effective_config": doc}), file=sys.stderr)


def _forest_config(args) -> ForestConfig:
    return ForestConfig(seed=args.seed)


def cmd_prep(args) -> int:
    dataset, report = _load_dataset(args)
    with _open_output(args.out) as out:
        write_points_csv(dataset, out)
    if args.report:
        Path(args.report).write_text(report.to_json())
    print(report.to_json(), file=sys.stderr)
    return 0


def cmd_vectorize(args) -> int:
    dataset, _ = _load_dataset(args)
    vd = vectorize_dataset(dataset)
    with _open_output(args.out) as out:
        write_vectors_csv(vd, out)
    return 0


def cmd_score(args) -> int:
    vd, _ = _load_vectors(args)
    combo = combination_from_slug(args.combo)
    from .outliers import score_combination, score_node
    zoned = score_combination(vd, combo)
    with _open_output(args.out) as out:
        write_zoned_csv(zoned, out)
    if args.node_scores:
        with open(args.node_scores, "w", encoding="utf-8", newline="") as out:
            write_node_scores_csv(score_node(vd, combo.x_node), out)
            write_node_scores_csv(score_node(vd, combo.y_node), out)
    return 0


def cmd_heatmap(args) -> int:
    vd, _ = _load_vectors(args)
    from .outliers import frequency_matrix
    fm = frequency_matrix(vd)
    with _open_output(args.out) as out:
        out.write(heatmap_to_json(fm))
        out.write("\n")
    return 0


def cmd_compare(args) -> int:
    try:
        zone_a, zone_b = (int(z) for z in args.zones.split(","))
    except ValueError:
        raise CliError("bad_zones", "--zones expects two comma-separated integers")
    vd, _ = _load_vectors(args)
    combo = combination_from_slug(args.combo)
    from .comparison import compare_zones
    report = compare_zones(vd, combo, zone_a, zone_b,
                           forest_config=_forest_config(args))
    _echo_config(args, {"combo": combo.slug, "zones": [zone_a, zone_b],
                        "forest": dataclasses.asdict(_forest_config(args))})
    with _open_output(args.out) as out:
        json.dump(report.to_jsonable(), out, indent=2)
        out.write("\n")
    if args.columns_csv:
        with open(args.columns_csv, "w", encoding="utf-8", newline="") as out:
            write_importance_columns_csv(report, out)
    return 0


def cmd_sample(args) -> int:
    dataset, _ = _load_dataset(args)
    analysis = Analysis(dataset)
    window = analysis.sample(args.tid, args.variable)
    with _open_output(args.out) as out:
        json.dump(window.to_jsonable(), out, indent=2)
        out.write("\n")
    return 0


def cmd_tune(args) -> int:
    try:
        zone_a, zone_b = (int(z) for z in args.zones.split(","))
    except ValueError:
        raise CliError("bad_zones", "--zones expects two comma-separated integers")
    vd, _ = _load_vectors(args)
    combo = combination_from_slug(args.combo)
    from .outliers import score_combination
    from .vectorize import node_subspace
    import numpy as np
    zoned = score_combination(vd, combo)
    rows = [i for i, zs in enumerate(zoned) if zs.zone in (zone_a, zone_b)]
    labels = np.array([0 if zoned[i].zone == zone_a else 1 for i in rows])
    if (labels == 0).sum() < 2 or (labels == 1).sum() < 2:
        raise ComparisonError("insufficient members in the selected zones")
    feats = sorted(set(node_subspace(combo.x_node)) | set(node_subspace(combo.y_node)))
    X = vd.matrix[np.asarray(rows)][:, feats]
    results = grid_search(X, labels, ForestConfig(seed=args.seed))
    _echo_config(args, {"combo": combo.slug, "zones": [zone_a, zone_b],
                        "candidates": len(results), "folds": 5, "seed": args.seed})
    with _open_output(args.out) as out:
        json.dump(results, out, indent=2)
        out.write("\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn
    from .service import create_app
    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    if args.data_dir:
        config.data_dir = args.data_dir
    _echo_config(args, {"host": config.host, "port": config.port,
                        "data_dir": config.data_dir})
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajscope",
        description="Trajectory analytics: taxonomy labeling, outlier zones, "
                    "zone comparison, and the workbench service.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="ingest, clean, and emit a normalized point CSV")
    _add_input_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--report", default=None, help="write the ingestion report JSON here")
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("vectorize", help="emit the 73-column statistical variable CSV")
    _add_input_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_vectorize)

    p = sub.add_parser("score", help="zoned outlier scores for one combination")
    _add_input_args_optional(p)
    p.add_argument("--vectors", default=None, help="precomputed vectors CSV (or -)")
    p.add_argument("--combo", required=True, help="e.g. geometric-kinematic")
    p.add_argument("--out", default="-")
    p.add_argument("--node-scores", default=None,
                   help="also write per-node scores CSV here")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("heatmap", help="7x4 zone frequency matrix JSON")
    _add_input_args_optional(p)
    p.add_argument("--vectors", default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("compare", help="zone-vs-zone feature importance report")
    _add_input_args_optional(p)
    p.add_argument("--vectors", default=None)
    p.add_argument("--combo", required=True)
    p.add_argument("--zones", required=True, help="two zones, e.g. 1,2")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    p.add_argument("--columns-csv", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sample", help="10-point sample window for a variable")
    _add_input_args(p)
    p.add_argument("--tid", required=True)
    p.add_argument("--variable", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("tune", help="grid-search forest hyperparameters (5 folds, 24 candidates)")
    _add_input_args_optional(p)
    p.add_argument("--vectors", default=None)
    p.add_argument("--combo", required=True)
    p.add_argument("--zones", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("serve", help="run the HTTP/JSON workbench service")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--data-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def _add_input_args_optional(parser: argparse.ArgumentParser) -> None:
    """Input args for commands that may instead consume --vectors."""
    parser.add_argument("--input", default=None, help="raw input file, or - for stdin")
    parser.add_argument("--format", default="csv", choices=["csv", "geojson"])
    parser.add_argument("--name", default="dataset")
    parser.add_argument("--preset", choices=["ibtracs"], default=None)
    parser.add_argument("--id-col", default=None)
    parser.add_argument("--time-col", default=None)
    parser.add_argument("--lat-col", default=None)
    parser.add_argument("--lon-col", default=None)
    parser.add_argument("--id-property", default=None)
    parser.add_argument("--time-property", default=None)
    parser.add_argument("--filter-col", default=None)
    parser.add_argument("--filter-min", type=float, default=None)
    parser.add_argument("--filter-max", type=float, default=None)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "vectors", None) is None and getattr(args, "input", None) is None \
            and args.command in ("score", "heatmap", "compare", "tune"):
        _fail("missing_input", "provide --input or --vectors")
        return 2
    try:
        return args.func(args)
    except (IngestError, CombinationError, ComparisonError, ValueError) as exc:
        _fail(type(exc).__name__.lower().removesuffix("error") or "invalid", str(exc))
        return 1
    except CliError as exc:
        _fail(exc.code, str(exc))
        return 1
    except FileNotFoundError as exc:
        _fail("file_not_found", str(exc))
        return 1


def _fail(code: str, message: str) -> None:
    print(json.dumps({"error": {"code": code, "message": message}}), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
