#!/usr/bin/env python3
"""Run all four reference scenarios and write their report bundles.

Each scenario directory gets timeseries.csv, snapshots.csv, fronts.svg,
heatmap.svg, verdict.json, and eigen_report.json.  Expect a few minutes in
total at the default resolution (n=512, 2000 steps per period).
"""

import argparse
import sys

from pulsefront.cli import main as cli_main
from pulsefront.presets import FIGURES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out", help="parent directory for the reports")
    args = ap.parse_args()
    for figure in FIGURES:
        print(f"== {figure}", flush=True)
        code = cli_main(["reproduce", figure, "--out", f"{args.out}/{figure}"])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
