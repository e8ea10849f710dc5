#!/usr/bin/env python3
"""Cyclone case-study reproduction report (best effort).

Ingests a local IBTrACS CSV restricted to seasons 2004-2024, scores the
curvature-speed combination, and prints the zone frequencies next to the
published reference row (1129, 245, 539, 206) with deltas and a qualitative
shape check. Exact counts drift with archive revisions; the shape is the
meaningful target.

Usage: python3 scripts/reproduce_cyclones.py --input data/ibtracs.ALL.list.v04r01.csv
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from trajscope.ingest import IBTRACS_CONFIG, parse_dataset
from trajscope.outliers import NodeScoreCache, frequency_matrix, score_combination
from trajscope.taxonomy import combination_from_slug
from trajscope.vectorize import vectorize_dataset

PUBLISHED_SPEED_CURVATURE = [1129, 245, 539, 206]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="IBTrACS CSV path")
    parser.add_argument("--json", default=None, help="also write the report here")
    args = parser.parse_args()

    start = time.perf_counter()
    with open(args.input, encoding="utf-8") as fh:
        dataset, report = parse_dataset(fh, "csv", config=IBTRACS_CONFIG,
                                        name="cyclones", source_label=args.input)
    print(f"ingested {report.trajectories} storms / {report.points} fixes "
          f"({report.rows_dropped} rows dropped) in {time.perf_counter() - start:.0f}s")

    vd = vectorize_dataset(dataset)
    cache = NodeScoreCache(vd)
    combo = combination_from_slug("curvature-speed")
    zoned = score_combination(vd, combo, cache=cache)
    counts = [sum(1 for z in zoned if z.zone == i) for i in range(4)]
    deltas = [counts[i] - PUBLISHED_SPEED_CURVATURE[i] for i in range(4)]
    shape_ok = (counts[0] == max(counts)
                and counts[2] > counts[1]
                and counts[3] <= sorted(counts)[1])

    print(f"curvature-speed zone counts: {counts}")
    print(f"published reference:         {PUBLISHED_SPEED_CURVATURE}")
    print(f"deltas:                      {deltas}")
    print(f"qualitative shape (zone0 largest, zone2>zone1, zone3 small): "
          f"{'OK' if shape_ok else 'MISMATCH'}")

    fm = frequency_matrix(vd, cache=cache)
    print("full frequency matrix:")
    for slug, row in zip(fm.combinations, fm.counts.tolist()):
        print(f"  {slug:28s} {row}")
    print(f"total runtime {time.perf_counter() - start:.0f}s")

    if args.json:
        doc = {"counts": counts, "published": PUBLISHED_SPEED_CURVATURE,
               "deltas": deltas, "shape_ok": shape_ok,
               "trajectories": report.trajectories,
               "matrix": fm.to_jsonable()}
        Path(args.json).write_text(json.dumps(doc, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
