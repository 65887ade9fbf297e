"""Bottom-up air-conditioning demand.

National stock-and-sales energy (baseline vs efficient unit mix), scaled
by an interpolated cooling-degree-day multiplier, split to states by GDP
per capita (residential) and sector ratio (commercial), then shaped into
hourly traces from surveyed profiles via convolution and day-type
coincidence factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CoolingConfig
from .errors import MissingMarketYear, MissingProfile, ShareSumViolation
from .hourly import HOURS_PER_YEAR, HourlyYear, daytype, year_days

KWH_PER_GWH = 1e6


def _market_at(table: dict[int, dict], year: int) -> dict:
    """Market row for a year, linearly interpolating between snapshots."""
    if year in table:
        return table[year]
    years = sorted(table)
    if year < years[0] or year > years[-1]:
        raise MissingMarketYear(f"no market data bracketing {year}")
    lo = max(y for y in years if y < year)
    hi = min(y for y in years if y > year)
    w = (year - lo) / (hi - lo)
    return {
        k: table[lo][k] * (1 - w) + table[hi][k] * w
        for k in ("units_sold", "unit_kwh_year")
    }


def national_cooling_energy(market: dict[int, dict], year: int,
                            lifetime_years: int = 10) -> float:
    """Stock x unit energy in GWh: each sales cohort consumes its own
    vintage's unit energy while it survives."""
    total_kwh = 0.0
    for cohort in range(year - lifetime_years + 1, year + 1):
        try:
            row = _market_at(market, cohort)
        except MissingMarketYear:
            continue  # cohort predates the table
        total_kwh += row["units_sold"] * row["unit_kwh_year"]
    return total_kwh / KWH_PER_GWH


def cdd_multiplier(year: int, base_year: int = 2018, horizon_year: int = 2050,
                   uplift: float = 0.5) -> float:
    """Linear climate uplift: 1.0 at the base year to 1 + uplift at the
    horizon, capped there."""
    if year < base_year:
        raise ValueError(f"year {year} precedes CDD base year {base_year}")
    frac = (year - base_year) / (horizon_year - base_year)
    return 1.0 + uplift * min(frac, 1.0)


@dataclass
class CoolingStateYear:
    state: str
    year: int
    scenario: str
    residential_gwh: float
    commercial_gwh: float


def split_states(national_gwh: float, shares: dict[str, float],
                 com_res_ratio: dict[str, float], year: int,
                 scenario: str) -> list[CoolingStateYear]:
    """State totals by GDP-per-capita share; within a state the
    commercial/residential split follows the state's consumption ratio."""
    total = sum(shares.values())
    if abs(total - 1.0) > 1e-6:
        raise ShareSumViolation(f"state shares sum to {total}, expected 1")
    out = []
    for state, share in shares.items():
        state_total = national_gwh * share
        r = com_res_ratio[state]
        res = state_total / (1.0 + r)
        out.append(CoolingStateYear(state, year, scenario, res, r * res))
    return out


def circular_convolve(weights: np.ndarray, kernel) -> np.ndarray:
    kernel = np.asarray(kernel, float)
    half = len(kernel) // 2
    out = np.zeros_like(weights)
    for k, w in enumerate(kernel):
        out += w * np.roll(weights, k - half)
    return out


def income_weights(rank_percentile: float) -> dict[str, float]:
    """Blend of low/mid/high income profiles from the state's GDP-per-capita
    rank percentile (0 = poorest, 1 = richest)."""
    p = min(max(rank_percentile, 0.0), 1.0)
    return {"low": (1 - p) ** 2, "mid": 2 * p * (1 - p), "high": p ** 2}


def build_cooling_profile(profiles, sector: str, season: str, dtype: str,
                          weights_by_income: dict[str, float],
                          coincidence: float, kernel=(0.25, 0.5, 0.25)) -> np.ndarray:
    """Income-weighted sum of surveyed profiles, circularly smoothed,
    scaled by the day-type coincidence factor, renormalized to sum 1."""
    total_w = sum(weights_by_income.values())
    if total_w <= 0:
        raise MissingProfile("income weights sum to zero")
    by_income = {}
    for p in profiles:
        if p.context == sector and p.season == season and p.daytype in (dtype, "all"):
            by_income[p.income] = p.weights
    if not by_income:
        raise MissingProfile(f"no {sector} profile for ({season}, {dtype})")
    blended = np.zeros(24)
    used = 0.0
    for income, w in weights_by_income.items():
        prof = by_income.get(income, by_income.get("all"))
        if prof is None:
            continue
        blended += w * prof
        used += w
    if used <= 0:
        raise MissingProfile(f"no profile matches income tiers {list(weights_by_income)}")
    blended /= used
    smoothed = circular_convolve(blended, kernel) * coincidence
    return smoothed / smoothed.sum()


def _season(day, summer_months) -> str:
    return "summer" if day.month in summer_months else "winter"


def cooling_hourly(state: str, year: int, scenario: str,
                   energy: CoolingStateYear, profiles,
                   weights_by_income: dict[str, float],
                   cfg: CoolingConfig) -> tuple[HourlyYear, HourlyYear]:
    """(Res AC, Com AC) traces. Annual energy is allocated to days by the
    season weight, each day shaped by the season/day-type profile; annual
    sums equal the state energies times the CDD multiplier."""
    days = year_days(year)
    season_w = np.array([
        cfg.summer_day_weight if day.month in cfg.summer_months else cfg.winter_day_weight
        for day in days
    ])
    season_w = season_w / season_w.sum()
    mult = cdd_multiplier(year, cfg.cdd_base_year, cfg.cdd_horizon_year,
                          cfg.cdd_uplift) if cfg.cdd_enabled else 1.0

    out = []
    for sector, annual_gwh, label in (
        ("residential", energy.residential_gwh, "Res AC"),
        ("commercial", energy.commercial_gwh, "Com AC"),
    ):
        annual_mwh = annual_gwh * 1000.0 * mult
        values = np.empty(HOURS_PER_YEAR)
        shapes = {}
        for i, day in enumerate(days):
            season = _season(day, cfg.summer_months)
            dt = daytype(day)
            key = (season, dt)
            if key not in shapes:
                factor = (cfg.coincidence_weekday if dt == "weekday"
                          else cfg.coincidence_weekend)
                shapes[key] = build_cooling_profile(
                    profiles, sector, season, dt, weights_by_income,
                    factor, cfg.kernel)
            day_energy = annual_mwh * season_w[i]
            values[24 * i: 24 * (i + 1)] = day_energy * shapes[key]
        out.append(HourlyYear(state, year, label, values))
    return out[0], out[1]
