"""Typed readers for all external inputs.

Everything arrives as local CSV with headers (documented in the README
schema table); readers validate as they parse and raise the narrowest
error naming the offending row. Records are plain frozen dataclasses.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateDay,
    IncompleteDay,
    MeanExceedsPeak,
    MissingColumn,
    NonPositiveValue,
    WrongRowCount,
)
from .regions import Region, WEATHER_VARS

MIN_HOURLY_SAMPLES = 20  # per city-day; tolerates small source gaps


@dataclass(frozen=True)
class DailyDemandRecord:
    day: date
    region: Region
    peak_mw: float
    energy_mwh: float


@dataclass(frozen=True)
class WeatherDaily:
    city: str
    day: date
    stats: dict  # var -> (min, max, avg)


@dataclass(frozen=True)
class ReferenceLoadYear:
    region: Region
    values: np.ndarray  # 8760 MW values, calendar year 2015


@dataclass(frozen=True)
class SampleProfile:
    context: str       # residential | commercial | home | work | public
    season: str        # summer | winter | all
    income: str        # low | mid | high | all
    daytype: str       # weekday | weekend | all
    weights: np.ndarray  # 24 values, sum 1


@dataclass
class ValidationReport:
    ok: bool = True
    issues: list[str] = field(default_factory=list)
    files: dict = field(default_factory=dict)

    def flag(self, message: str) -> None:
        self.ok = False
        self.issues.append(message)


def _reader(path, required: list[str]):
    path = Path(path)
    fh = path.open(newline="")
    rd = csv.DictReader(fh)
    header = rd.fieldnames or []
    for col in required:
        if col not in header:
            fh.close()
            raise MissingColumn(path, col)
    return fh, rd


def load_daily_demand(path) -> list[DailyDemandRecord]:
    fh, rd = _reader(path, ["date", "region", "peak_mw", "energy_mwh"])
    records = []
    seen = set()
    with fh:
        for i, row in enumerate(rd, start=2):
            day = date.fromisoformat(row["date"])
            region = Region(row["region"])
            peak = float(row["peak_mw"])
            energy = float(row["energy_mwh"])
            if peak <= 0:
                raise NonPositiveValue(path, i, "peak_mw", peak)
            if energy <= 0:
                raise NonPositiveValue(path, i, "energy_mwh", energy)
            if energy / 24.0 > peak:
                raise MeanExceedsPeak(path, i, energy / 24.0, peak)
            key = (region, day)
            if key in seen:
                raise DuplicateDay(path, i, key)
            seen.add(key)
            records.append(DailyDemandRecord(day, region, peak, energy))
    records.sort(key=lambda r: (r.region.value, r.day))
    return records


def aggregate_weather_daily(samples) -> list[WeatherDaily]:
    """Collapse hourly samples to per-(city, day) min/max/avg of each
    variable. A day with fewer than 20 hourly samples is rejected."""
    grouped: dict[tuple, dict[str, list[float]]] = {}
    for s in samples:
        key = (s["city"], s["day"])
        bucket = grouped.setdefault(key, {v: [] for v in WEATHER_VARS})
        for v in WEATHER_VARS:
            bucket[v].append(float(s[v]))
    out = []
    for (city, day), bucket in sorted(grouped.items()):
        n = len(bucket[WEATHER_VARS[0]])
        if n < MIN_HOURLY_SAMPLES:
            raise IncompleteDay(city, day, n)
        stats = {
            v: (min(vals), max(vals), sum(vals) / len(vals))
            for v, vals in bucket.items()
        }
        out.append(WeatherDaily(city, day, stats))
    return out


def load_weather_hourly(path) -> list[WeatherDaily]:
    fh, rd = _reader(path, ["city", "timestamp"] + WEATHER_VARS)
    samples = []
    with fh:
        for row in rd:
            ts = datetime.fromisoformat(row["timestamp"])
            sample = {"city": row["city"], "day": ts.date()}
            for v in WEATHER_VARS:
                val = float(row[v])
                if v in ("t2m", "t10m") and val <= 0:
                    raise NonPositiveValue(path, row, v, val)
                sample[v] = val
            samples.append(sample)
    return aggregate_weather_daily(samples)


def load_weather_daily(path) -> list[WeatherDaily]:
    """Pre-aggregated daily weather (city,date,<var>_min,<var>_max,<var>_avg)."""
    cols = [f"{v}_{s}" for v in WEATHER_VARS for s in ("min", "max", "avg")]
    fh, rd = _reader(path, ["city", "date"] + cols)
    out = []
    with fh:
        for i, row in enumerate(rd, start=2):
            stats = {}
            for v in WEATHER_VARS:
                lo = float(row[f"{v}_min"])
                hi = float(row[f"{v}_max"])
                avg = float(row[f"{v}_avg"])
                if not (lo <= avg <= hi):
                    raise NonPositiveValue(path, i, v, f"min<=avg<=max violated: {lo},{avg},{hi}")
                stats[v] = (lo, hi, avg)
            out.append(WeatherDaily(row["city"], date.fromisoformat(row["date"]), stats))
    return out


def load_reference_year(path) -> dict[Region, ReferenceLoadYear]:
    fh, rd = _reader(path, ["region", "timestamp", "mw"])
    buckets: dict[Region, list[float]] = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            mw = float(row["mw"])
            if mw <= 0:
                raise NonPositiveValue(path, i, "mw", mw)
            buckets.setdefault(Region(row["region"]), []).append(mw)
    out = {}
    for region, vals in buckets.items():
        if len(vals) != 8760:
            raise WrongRowCount(path, len(vals))
        out[region] = ReferenceLoadYear(region, np.asarray(vals))
    return out


def load_profiles(path) -> list[SampleProfile]:
    hour_cols = [f"h{i}" for i in range(24)]
    fh, rd = _reader(path, ["context", "season", "income", "daytype"] + hour_cols)
    out = []
    with fh:
        for i, row in enumerate(rd, start=2):
            w = np.array([float(row[h]) for h in hour_cols])
            if np.any(w < 0):
                raise NonPositiveValue(path, i, "weights", "negative hour weight")
            total = w.sum()
            if total <= 0:
                raise NonPositiveValue(path, i, "weights", "all-zero profile")
            out.append(SampleProfile(row["context"], row["season"], row["income"],
                                     row["daytype"], w / total))
    return out


def _load_year_value_table(path, key_col: str, value_col: str) -> dict[str, dict[int, float]]:
    fh, rd = _reader(path, [key_col, "year", value_col])
    out: dict[str, dict[int, float]] = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            v = float(row[value_col])
            if v <= 0:
                raise NonPositiveValue(path, i, value_col, v)
            out.setdefault(row[key_col], {})[int(row["year"])] = v
    return out


def load_gdp_state(path) -> dict[str, dict[int, float]]:
    return _load_year_value_table(path, "state", "gdp_usd")


def load_population_state(path) -> dict[str, dict[int, float]]:
    return _load_year_value_table(path, "state", "pop")


def load_stable_anchors(path) -> dict[int, float]:
    fh, rd = _reader(path, ["year", "gdp_usd"])
    out = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            v = float(row["gdp_usd"])
            if v <= 0:
                raise NonPositiveValue(path, i, "gdp_usd", v)
            out[int(row["year"])] = v
    return out


def load_vehicle_sales(path) -> dict[tuple[str, str], dict[int, float]]:
    """(state, segment) -> year -> units."""
    fh, rd = _reader(path, ["state", "year", "segment", "units"])
    out: dict[tuple[str, str], dict[int, float]] = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            units = float(row["units"])
            if units < 0:
                raise NonPositiveValue(path, i, "units", units)
            out.setdefault((row["state"], row["segment"]), {})[int(row["year"])] = units
    return out


def load_ac_market(path) -> dict[str, dict[int, dict]]:
    """scenario -> year -> {units_sold, unit_kwh_year}."""
    fh, rd = _reader(path, ["year", "scenario", "units_sold", "unit_kwh_year"])
    out: dict[str, dict[int, dict]] = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            sold = float(row["units_sold"])
            kwh = float(row["unit_kwh_year"])
            if sold < 0 or kwh <= 0:
                raise NonPositiveValue(path, i, "units_sold/unit_kwh_year", (sold, kwh))
            out.setdefault(row["scenario"], {})[int(row["year"])] = {
                "units_sold": sold, "unit_kwh_year": kwh,
            }
    return out


def load_ev_params(path) -> dict[str, dict]:
    fh, rd = _reader(path, ["segment", "efficiency", "short_kwh", "long_kwh"])
    out = {}
    with fh:
        for i, row in enumerate(rd, start=2):
            eff = float(row["efficiency"])
            short = float(row["short_kwh"])
            long_ = float(row["long_kwh"])
            if eff <= 0:
                raise NonPositiveValue(path, i, "efficiency", eff)
            if long_ <= short:
                raise NonPositiveValue(path, i, "long_kwh", "long range must exceed short")
            out[row["segment"]] = {"efficiency": eff, "short_kwh": short, "long_kwh": long_}
    return out


@dataclass
class InputBundle:
    demand: list[DailyDemandRecord]
    weather: list[WeatherDaily]
    reference: dict[Region, ReferenceLoadYear]
    gdp_state: dict[str, dict[int, float]]
    stable_anchors: dict[int, float]
    population: dict[str, dict[int, float]]
    vehicle_sales: dict[tuple[str, str], dict[int, float]]
    ac_market: dict[str, dict[int, dict]]
    ev_params: dict[str, dict]
    profiles: list[SampleProfile]


def load_bundle(cfg) -> InputBundle:
    inp = cfg.inputs
    weather_daily_path = inp.path("weather_daily")
    if weather_daily_path.exists():
        weather = load_weather_daily(weather_daily_path)
    else:
        weather = load_weather_hourly(inp.path("weather_hourly"))
    return InputBundle(
        demand=load_daily_demand(inp.path("demand_daily")),
        weather=weather,
        reference=load_reference_year(inp.path("reference_2015")),
        gdp_state=load_gdp_state(inp.path("gdp_state")),
        stable_anchors=load_stable_anchors(inp.path("gdp_stable_anchors")),
        population=load_population_state(inp.path("population_state")),
        vehicle_sales=load_vehicle_sales(inp.path("vehicle_sales")),
        ac_market=load_ac_market(inp.path("ac_market")),
        ev_params=load_ev_params(inp.path("ev_params")),
        profiles=load_profiles(inp.path("profiles")),
    )


def validate_bundle(cfg, catalog) -> ValidationReport:
    """Load everything and report per-file status plus cross-file coverage:
    the 2014-2019 training window, region coverage, and catalog completeness."""
    report = ValidationReport()
    inp = cfg.inputs
    loaders = {
        "demand_daily": load_daily_demand,
        "reference_2015": load_reference_year,
        "gdp_state": load_gdp_state,
        "gdp_stable_anchors": load_stable_anchors,
        "population_state": load_population_state,
        "vehicle_sales": load_vehicle_sales,
        "ac_market": load_ac_market,
        "ev_params": load_ev_params,
        "profiles": load_profiles,
    }
    loaded = {}
    for name, loader in loaders.items():
        path = inp.path(name)
        try:
            loaded[name] = loader(path)
            report.files[name] = "ok"
        except FileNotFoundError:
            report.files[name] = "missing"
            report.flag(f"{name}: file not found at {path}")
        except Exception as exc:  # surfaced in the report, not raised
            report.files[name] = f"error: {exc}"
            report.flag(f"{name}: {exc}")

    try:
        if inp.path("weather_daily").exists():
            loaded["weather"] = load_weather_daily(inp.path("weather_daily"))
        else:
            loaded["weather"] = load_weather_hourly(inp.path("weather_hourly"))
        report.files["weather"] = "ok"
    except FileNotFoundError:
        report.files["weather"] = "missing"
        report.flag("weather: no weather_daily.csv or weather_hourly.csv")
    except Exception as exc:
        report.files["weather"] = f"error: {exc}"
        report.flag(f"weather: {exc}")

    demand = loaded.get("demand_daily")
    if demand:
        regions_seen = {r.region for r in demand}
        for region in Region:
            if region not in regions_seen:
                report.flag(f"demand_daily: no rows for region {region.value}")
        years = {r.day.year for r in demand}
        for y in range(2014, 2020):
            if y not in years:
                report.flag(f"demand_daily: training year {y} absent")

    weather = loaded.get("weather")
    if weather:
        cities_seen = {w.city for w in weather}
        for name in catalog.all_city_names():
            if name not in cities_seen:
                report.flag(f"weather: catalog city {name} absent")
        for w in weather[:50] + weather[-50:]:
            if len(w.stats) != len(WEATHER_VARS):
                report.flag(f"weather: {w.city} {w.day} has {len(w.stats)} variables, expected 11")
                break
    return report
