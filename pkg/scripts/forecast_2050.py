#!/usr/bin/env python3
"""Propagate the bundled labor-force decline scenario out to 2050.

Uses the frozen model registry (no refitting): the deflator and CPI inflation
links plus the piecewise unemployment link. Writes report.csv/report.json and
charts to --out. Usage:

    python3 scripts/forecast_2050.py [--out OUTDIR] [--models eq7,eq8,eq9]
"""

import argparse
from pathlib import Path

from lfphillips.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent
SCENARIO = ROOT / "data" / "japan" / "scenario_2005.json"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out")
    parser.add_argument("--models", default="eq7,eq8,eq9")
    parser.add_argument("--scenario", default=str(SCENARIO))
    args = parser.parse_args()
    return cli_main(["--out", args.out, "--format", "csv,json,svg",
                     "forecast", "--scenario", args.scenario,
                     "--models", args.models])


if __name__ == "__main__":
    raise SystemExit(main())
