"""Command-line interface.

Subcommands: run, backtest, validate-inputs, init-fixtures, plot.
Failures exit nonzero with a one-line machine-readable JSON error on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import load_config
from .errors import DemandcastError
from .regions import CityCatalog


def _add_common(p):
    p.add_argument("--config", required=True, help="run config JSON")
    p.add_argument("--seed", type=int, default=None, help="override config seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demandcast",
        description="India electricity-demand scenario engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the scenario matrix")
    _add_common(p_run)
    p_run.add_argument("--out", required=True, help="output tree root")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="accepted for interface compatibility; execution "
                            "is deterministic at any parallelism")
    p_run.add_argument("--year", type=int, default=None,
                       help="detailed-profile year (default: config, 2050)")
    p_run.add_argument("--gdp", choices=["slow", "stable", "rapid"], default=None)
    p_run.add_argument("--charging", choices=["home", "work", "public"], default=None)
    p_run.add_argument("--cooling", choices=["baseline", "efficient"], default=None)

    p_bt = sub.add_parser("backtest", help="hold-out fit report per region/target")
    _add_common(p_bt)
    p_bt.add_argument("--out", default=None, help="optional JSON report path")

    p_val = sub.add_parser("validate-inputs", help="schema/coverage report")
    _add_common(p_val)

    p_fx = sub.add_parser("init-fixtures", help="emit a synthetic desk-scale dataset")
    p_fx.add_argument("--out", required=True, help="fixture directory")
    p_fx.add_argument("--seed", type=int, default=42)

    p_plot = sub.add_parser("plot", help="per-scenario summary charts (SVG)")
    p_plot.add_argument("--results", required=True, help="output tree from `run`")
    p_plot.add_argument("--out", required=True, help="SVG directory")
    p_plot.add_argument("--geo", default="IN", help="geography code (default IN)")
    return parser


def _load(args):
    cfg = load_config(args.config)
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "init-fixtures":
            from .fixtures import write_fixtures
            cfg_path = write_fixtures(args.out, seed=args.seed)
            print(f"fixtures written; config at {cfg_path}")
            return 0

        if args.command == "validate-inputs":
            from .ingest import validate_bundle
            report = validate_bundle(_load(args), CityCatalog())
            for name, status in sorted(report.files.items()):
                print(f"{name:24s} {status}")
            for issue in report.issues:
                print(f"ISSUE: {issue}")
            print("OK" if report.ok else "FAILED")
            return 0 if report.ok else 1

        if args.command == "backtest":
            from .runner import backtest, format_backtest
            rows = backtest(_load(args))
            print(format_backtest(rows))
            if args.out:
                Path(args.out).write_text(json.dumps(rows, indent=2) + "\n")
            return 0

        if args.command == "run":
            from .runner import run_matrix
            cfg = _load(args)
            for axis, attr in (("gdp", "gdp_scenarios"),
                               ("charging", "charging_schemes"),
                               ("cooling", "cooling_scenarios")):
                chosen = getattr(args, axis)
                if chosen:
                    setattr(cfg, attr, [chosen])
            result = run_matrix(cfg, args.out, detailed_year=args.year)
            n = len(result.manifest["scenarios"])
            print(f"{n} scenario folders written under {args.out}")
            return 0

        if args.command == "plot":
            from .plots import plot_summaries
            paths = plot_summaries(args.results, args.out, geo=args.geo)
            print(f"{len(paths)} charts written under {args.out}")
            return 0
    except DemandcastError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": "FileNotFound", "message": str(exc)}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
