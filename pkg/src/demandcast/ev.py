"""Bottom-up electric-vehicle demand.

Vehicle sales regress on state GDP and follow the scenario GDP path;
electrification shares ramp to the 2030 policy targets (met in the rapid
scenario, later for stable/slow); fleet energy uses urban/rural commute
distances and charging frequency; charging-scheme profiles shape the
hourly traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import EvConfig
from .errors import InsufficientHistory, MissingProfile
from .hourly import HOURS_PER_YEAR, HourlyYear, year_days

SEGMENTS = ("E2W", "E3W", "E4W")
URBAN_CHARGE_FREQ = 0.5  # sessions per vehicle-day; rural charges daily


def project_sales(history: dict[int, float], gdp_history: dict[int, float],
                  gdp_path, years) -> dict[int, float]:
    """OLS of annual sales on state GDP, evaluated on the scenario GDP
    path; negative projections floored at 0."""
    common = sorted(set(history) & set(gdp_history))
    if len(common) < 3:
        raise InsufficientHistory(f"{len(common)} overlapping sales/GDP years, need >= 3")
    x = np.array([gdp_history[y] for y in common])
    y = np.array([history[y] for y in common])
    if np.ptp(x) == 0:
        slope, intercept = 0.0, float(y.mean())
    else:
        slope, intercept = np.polyfit(x, y, 1)
    return {
        yr: max(0.0, float(slope * gdp_path[yr] + intercept))
        for yr in years
    }


def electrification_share(segment: str, scenario: str, year: int, cfg: EvConfig) -> float:
    """Linear ramp from the calibrated 2020 share to the scenario's target
    year; E2W holds at 100% afterward, E3W/E4W keep a configured slope."""
    if year < 2020:
        return 0.0
    start = cfg.share_2020[segment]
    target = cfg.target_share[segment]
    t_year = cfg.target_year[scenario]
    if year <= t_year:
        frac = (year - 2020) / (t_year - 2020)
        return start + (target - start) * frac
    if segment == "E2W":
        return target
    return min(1.0, target + cfg.post_target_slope * (year - t_year))


def range_mix(year: int, long_2050: float = 0.8) -> tuple[float, float]:
    """(short share, long share): linear from all-short in 2020 to the
    configured long-range dominance in 2050."""
    if not (2020 <= year <= 2050):
        raise ValueError("range mix defined on 2020-2050")
    frac = (year - 2020) / 30.0
    long_share = long_2050 * frac
    return 1.0 - long_share, long_share


@dataclass
class FleetStateYear:
    state: str
    year: int
    counts: dict[str, float]          # segment -> vehicles
    urban_fraction: float = 0.5


@dataclass
class FleetModel:
    """Fleet counts per (state, segment, year) for one GDP scenario.

    The 2020 fleet is the national registered-EV anchor distributed by
    state share and segment mix; later years accumulate projected sales
    times the electrification share.
    """
    scenario: str
    by_state_year: dict[tuple[str, int], FleetStateYear] = field(default_factory=dict)

    def fleet(self, state: str, year: int) -> FleetStateYear:
        return self.by_state_year[(state, year)]


def build_fleet_model(scenario: str, states: list, state_shares_2020: dict[str, float],
                      sales_by_state_segment: dict, gdp_hist_by_state: dict,
                      gdp_path_by_state: dict, years: list[int],
                      cfg: EvConfig) -> FleetModel:
    model = FleetModel(scenario)
    all_years = list(range(2020, max(years) + 1))
    for spec in states:
        code = spec.code
        base = {
            seg: cfg.fleet_2020_total * state_shares_2020[code] * cfg.segment_mix_2020[seg]
            for seg in SEGMENTS
        }
        sales_proj = {}
        for seg in SEGMENTS:
            hist = sales_by_state_segment.get((code, seg), {})
            sales_proj[seg] = project_sales(hist, gdp_hist_by_state[code],
                                            gdp_path_by_state[code], all_years)
        counts = dict(base)
        model.by_state_year[(code, 2020)] = FleetStateYear(
            code, 2020, dict(counts), spec.urban_fraction)
        for year in all_years[1:]:
            for seg in SEGMENTS:
                share = electrification_share(seg, scenario, year, cfg)
                counts[seg] = counts[seg] + sales_proj[seg][year] * share
            model.by_state_year[(code, year)] = FleetStateYear(
                code, year, dict(counts), spec.urban_fraction)
    return model


def fleet_energy_day(fleet: FleetStateYear, segment: str, efficiency_kwh_km: float,
                     urban_km: float, rural_km: float) -> tuple[float, float, float]:
    """(daily energy MWh, charge sessions/day, energy per session kWh).

    Urban drivers charge every other day, rural every day, so sessions
    halve for the urban cohort while daily energy is unchanged.
    """
    count = fleet.counts[segment]
    if count <= 0:
        return 0.0, 0.0, 0.0
    urban = count * fleet.urban_fraction
    rural = count - urban
    daily_kwh = (urban * urban_km + rural * rural_km) * efficiency_kwh_km
    sessions = urban * URBAN_CHARGE_FREQ + rural
    per_session = daily_kwh / sessions if sessions > 0 else 0.0
    return daily_kwh / 1000.0, sessions, per_session


def charging_profile(profiles, scheme: str, kernel=(0.25, 0.5, 0.25)) -> np.ndarray:
    from .cooling import circular_convolve

    for p in profiles:
        if p.context == scheme:
            smoothed = circular_convolve(p.weights, kernel)
            return smoothed / smoothed.sum()
    raise MissingProfile(f"no charging profile for scheme {scheme!r}")


def ev_hourly(state: str, year: int, scheme: str, fleet: FleetStateYear,
              ev_params: dict, profiles, cfg: EvConfig) -> dict[str, HourlyYear]:
    """One trace per segment; every day carries the same scheme profile, so
    the annual sum is exactly 365 x daily energy regardless of scheme."""
    prof = charging_profile(profiles, scheme)
    n_days = len(year_days(year))
    out = {}
    for seg in SEGMENTS:
        daily_mwh, _, _ = fleet_energy_day(
            fleet, seg, ev_params[seg]["efficiency"],
            cfg.urban_km_per_day, cfg.rural_km_per_day)
        day_trace = daily_mwh * prof
        values = np.tile(day_trace, n_days)[:HOURS_PER_YEAR]
        out[seg] = HourlyYear(state, year, seg, values)
    return out
