#!/usr/bin/env python3
"""Best-effort fetch of the public IBTrACS tropical-cyclone archive.

Downloads the ALL-basin v04r01 CSV from NOAA (about 300 MB) into data/ so the
cyclone reproduction report can run. Needs outbound network access; on
machines without it, download the file manually and point IBTRACS_CSV at it:

    https://www.ncei.noaa.gov/data/international-best-track-archive-for-climate-stewardship-ibtracs/v04r01/access/csv/ibtracs.ALL.list.v04r01.csv
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

URL = ("https://www.ncei.noaa.gov/data/"
       "international-best-track-archive-for-climate-stewardship-ibtracs/"
       "v04r01/access/csv/ibtracs.ALL.list.v04r01.csv")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/ibtracs.ALL.list.v04r01.csv")
    parser.add_argument("--url", default=URL)
    args = parser.parse_args()

    out = Path(args.out)
    if out.exists():
        print(f"{out} already exists ({out.stat().st_size} bytes); nothing to do")
        return 0
    out.parent.mkdir(parents=True, exist_ok=True)

    try:
        import requests
    except ImportError:
        print("requests is not installed; pip install requests", file=sys.stderr)
        return 1

    print(f"downloading {args.url}")
    try:
        with requests.get(args.url, stream=True, timeout=60) as response:
            response.raise_for_status()
            written = 0
            with open(out, "wb") as fh:
                for chunk in response.iter_content(chunk_size=1 << 20):
                    fh.write(chunk)
                    written += len(chunk)
                    print(f"\r{written / 1e6:.0f} MB", end="", flush=True)
        print(f"\nsaved {out}")
        return 0
    except Exception as exc:  # network errors, DNS, timeouts
        print(f"\ndownload failed: {exc}", file=sys.stderr)
        print("fetch the file manually and set IBTRACS_CSV to its path",
              file=sys.stderr)
        if out.exists():
            out.unlink()
        return 1


if __name__ == "__main__":
    sys.exit(main())
