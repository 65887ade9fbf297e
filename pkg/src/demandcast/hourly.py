"""Daily-to-hourly downscaling against the 2015 reference load year.

Every 2015 hour is pooled by (month, weekday/weekend, hour-of-day) after
normalizing by its day's mean. Synthesizing a projected day draws one pool
sample per hour, applies a temperature scale factor, then solves the exact
affine map that makes the day's sum hit the energy target and its max hit
the peak target.
"""

from __future__ import annotations

import calendar
from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .errors import EmptyPool, InfeasibleDay
from .ingest import ReferenceLoadYear
from .rng import stream

HOURS_PER_YEAR = 8760


def is_weekend(day: date) -> bool:
    return day.weekday() >= 5


def daytype(day: date) -> str:
    return "weekend" if is_weekend(day) else "weekday"


def year_days(year: int) -> list[date]:
    """365 calendar days; leap years drop Feb 29 to keep 8760 rows."""
    d = date(year, 1, 1)
    out = []
    while d.year == year:
        if not (d.month == 2 and d.day == 29):
            out.append(d)
        d += timedelta(days=1)
    return out


@dataclass
class ClusterSet:
    pools: dict[tuple[int, str, int], np.ndarray]  # (month, daytype, hour)

    def pool(self, month: int, dtype: str, hour: int) -> np.ndarray:
        key = (month, dtype, hour)
        p = self.pools.get(key)
        if p is None or len(p) == 0:
            raise EmptyPool(key)
        return p


def build_clusters(ref: ReferenceLoadYear) -> ClusterSet:
    """576 pools (12 months x 2 day types x 24 hours) of day-mean
    normalized 2015 demand values."""
    values = np.asarray(ref.values, float).reshape(365, 24)
    days = year_days(2015)
    pools: dict[tuple[int, str, int], list[float]] = {}
    for i, day in enumerate(days):
        shape = values[i] / values[i].mean()
        dt = daytype(day)
        for h in range(24):
            pools.setdefault((day.month, dt, h), []).append(shape[h])
    out = {k: np.asarray(v) for k, v in pools.items()}
    for month in range(1, 13):
        for dt in ("weekday", "weekend"):
            for h in range(24):
                if (month, dt, h) not in out:
                    raise EmptyPool((month, dt, h))
    return ClusterSet(out)


def weather_scale_factor(day_temp: float, ref_temp: float, ref_std: float,
                         beta: float = 0.05, lo: float = 0.9, hi: float = 1.1) -> float:
    """Clamped std-normalized temperature response."""
    if ref_std <= 0:
        raise ValueError("reference temperature std must be > 0")
    return float(np.clip(1.0 + beta * (day_temp - ref_temp) / ref_std, lo, hi))


def fit_day(shape: np.ndarray, energy_target: float, peak_target: float) -> np.ndarray:
    """Affine map a*s + b hitting sum == energy_target and max == peak_target.

    Negative hours are floored at zero followed by one proportional
    re-normalization of the non-peak hours, preserving both targets.
    """
    s = np.asarray(shape, float)
    if len(s) != 24:
        raise ValueError("shape must have 24 values")
    mean_target = energy_target / 24.0
    if peak_target < mean_target:
        raise InfeasibleDay(peak_target, energy_target)
    s_max = float(s.max())
    s_mean = float(s.mean())
    if peak_target == mean_target or s_max == s_mean:
        if peak_target > mean_target and s_max == s_mean:
            raise InfeasibleDay(peak_target, energy_target)
        return np.full(24, mean_target)
    a = (peak_target - mean_target) / (s_max - s_mean)
    b = mean_target - a * s_mean
    out = a * s + b
    if np.any(out < 0):
        out = np.maximum(out, 0.0)
        peak_idx = int(np.argmax(out))
        others = np.ones(24, bool)
        others[peak_idx] = False
        rest_target = energy_target - peak_target
        rest_sum = float(out[others].sum())
        if rest_sum > 0:
            out[others] *= rest_target / rest_sum
        out[peak_idx] = peak_target
    return out


@dataclass
class HourlyYear:
    geography: str
    year: int
    component: str
    values: np.ndarray  # 8760 MW
    repaired_days: int = 0


def synthesize_year(clusters: ClusterSet, year: int,
                    daily_energy: dict[date, float], daily_peak: dict[date, float],
                    geography: str, seed: int,
                    day_scale: dict[date, float] | None = None,
                    component: str = "Base") -> HourlyYear:
    """Concatenate 365 fitted days. Upstream projection inconsistencies
    (peak below mean load) are repaired by raising the peak to
    mean * 1.02 before fitting."""
    days = year_days(year)
    values = np.empty(HOURS_PER_YEAR)
    repaired = 0
    for i, day in enumerate(days):
        rng = stream(seed, "hourly", geography, day.isoformat())
        dt = daytype(day)
        shape = np.array([
            rng.choice(clusters.pool(day.month, dt, h)) for h in range(24)
        ])
        if day_scale is not None:
            shape = shape * day_scale[day]
        energy = daily_energy[day]
        peak = daily_peak[day]
        if peak < energy / 24.0:
            peak = energy / 24.0 * 1.02
            repaired += 1
        values[24 * i: 24 * (i + 1)] = fit_day(shape, energy, peak)
    return HourlyYear(geography, year, component, values, repaired_days=repaired)
