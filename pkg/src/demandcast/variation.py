"""Natural-variation model: per-month absolute-residual statistics from the
held-out year, injected back into projections as seeded signed noise.

Each day's adjustment is s * m with s a fair sign bit and m drawn from a
normal on (mean_abs, std_abs) truncated at zero. Draws are keyed
(seed, region, target, date), so streams are independent per series and
per day; the execution order can never change them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bau import DailySeries
from .errors import EmptyMonth
from .rng import stream


@dataclass(frozen=True)
class MonthStats:
    mean_abs: float
    std_abs: float


@dataclass
class NoiseModel:
    region: str
    target: str
    months: dict[int, MonthStats]  # 1..12

    def stats(self, month: int) -> MonthStats:
        if month not in self.months:
            raise EmptyMonth(month)
        return self.months[month]


def estimate_noise(residuals_by_date: dict, region: str, target: str) -> NoiseModel:
    """residuals are (actual - predicted); statistics are of |residual|,
    grouped by calendar month."""
    buckets: dict[int, list[float]] = {m: [] for m in range(1, 13)}
    for day, r in residuals_by_date.items():
        buckets[day.month].append(abs(float(r)))
    months = {}
    for m, vals in buckets.items():
        if not vals:
            raise EmptyMonth(m)
        arr = np.asarray(vals)
        months[m] = MonthStats(float(arr.mean()), float(arr.std()))
    return NoiseModel(region, target, months)


def noise_adjustment(model: NoiseModel, day, seed: int) -> float:
    st = model.stats(day.month)
    rng = stream(seed, "noise", model.region, model.target, day.isoformat())
    sign = 1.0 if rng.integers(0, 2) == 1 else -1.0
    mag = -1.0
    while mag < 0.0:
        mag = rng.normal(st.mean_abs, st.std_abs)
    return sign * mag


def apply_noise(series: DailySeries, model: NoiseModel, seed: int) -> tuple[DailySeries, np.ndarray, int]:
    """Returns (noisy series, adjustment vector, clamp count). Values are
    floored at 1% of the input series minimum so injection never produces
    nonpositive demand."""
    adj = np.array([noise_adjustment(model, d, seed) for d in series.dates])
    floor = 0.01 * float(np.min(series.values))
    noisy = series.values + adj
    clamps = int(np.sum(noisy < floor))
    noisy = np.maximum(noisy, floor)
    out = DailySeries(series.region, series.target, list(series.dates), noisy)
    return out, adj, clamps
