#!/usr/bin/env python3
"""End-to-end demo on the bundled synthetic dataset.

Writes fixtures, prints the hold-out backtest report, runs the full
18-scenario matrix, and renders summary charts. Everything lands under a
single workspace directory (default: ./demo_workspace).
"""

import argparse
import sys
from pathlib import Path

from demandcast.cli import main as cli


def run(argv):
    print("$ demandcast " + " ".join(argv))
    rc = cli(argv)
    if rc != 0:
        sys.exit(rc)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workspace", default="demo_workspace")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    ws = Path(args.workspace)
    fixtures = ws / "fixtures"
    results = ws / "results"
    charts = ws / "charts"
    config = str(fixtures / "config.json")

    run(["init-fixtures", "--out", str(fixtures), "--seed", str(args.seed)])
    run(["validate-inputs", "--config", config])
    run(["backtest", "--config", config, "--out", str(ws / "backtest.json")])
    run(["run", "--config", config, "--out", str(results)])
    run(["plot", "--results", str(results), "--out", str(charts)])
    print(f"\ndone; see {results} and {charts}")


if __name__ == "__main__":
    main()
