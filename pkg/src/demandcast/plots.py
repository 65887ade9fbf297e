"""Summary charts: stacked annual consumption per scenario, written as SVG."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("svg")
import matplotlib.pyplot as plt  # noqa: E402

from .runner import COMPONENTS  # noqa: E402


def _read_summary(path: Path):
    with path.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    years = [int(r["DateTime"]) for r in rows]
    series = {c: [float(r[c]) for r in rows] for c in COMPONENTS}
    return years, series


def plot_summaries(results_root, out_dir, geo: str = "IN") -> list[Path]:
    root = Path(results_root)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for summary in sorted(root.glob(f"*/*/*/summary/{geo}.csv")):
        scenario = "/".join(summary.relative_to(root).parts[:3])
        years, series = _read_summary(summary)
        fig, ax = plt.subplots(figsize=(7, 4.5))
        bottoms = [0.0] * len(years)
        for comp in COMPONENTS:
            vals = series[comp]
            ax.bar(years, vals, bottom=bottoms, width=3.2, label=comp)
            bottoms = [b + v for b, v in zip(bottoms, vals)]
        ax.set_title(f"{geo}: {scenario}")
        ax.set_xlabel("Year")
        ax.set_ylabel("Annual consumption (GWh)")
        ax.legend(fontsize=8)
        fig.tight_layout()
        target = out / (scenario.replace("/", "_") + f"_{geo}.svg")
        fig.savefig(target)
        plt.close(fig)
        written.append(target)
    return written
