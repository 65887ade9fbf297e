"""Synthetic desk-scale input fixtures.

Emits the full documented CSV schema set plus a matching config JSON. The
data is generated, not sourced: GDP history decelerates from ~12%/yr to
~7%/yr so the exponential (rapid) and Gompertz (slow) fits bracket the
published stable anchors; daily demand carries a planted linear signal in
regional temperature and GDP so the back-test has something to find; the
AC market table is calibrated so the baseline 2019 stock consumes 32.7 TWh.
"""

from __future__ import annotations

import csv
import json
import math
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from .config import DemandConfig, InputPaths, StateSpec, save_config
from .regions import CityCatalog, Region, WEATHER_VARS
from .rng import stream

STATE_SPECS = [
    # code, region, gdp weight, urban fraction, com/res ratio
    ("DL", "NR", 0.12, 0.95, 0.9),
    ("UP", "NR", 0.10, 0.30, 0.45),
    ("PB", "NR", 0.05, 0.45, 0.5),
    ("MH", "WR", 0.20, 0.55, 0.8),
    ("GJ", "WR", 0.12, 0.50, 0.7),
    ("WB", "ER", 0.08, 0.35, 0.55),
    ("BR", "ER", 0.04, 0.15, 0.35),
    ("KA", "SR", 0.13, 0.45, 0.75),
    ("TN", "SR", 0.12, 0.50, 0.7),
    ("AS", "NER", 0.04, 0.20, 0.4),
]

REGION_DEMAND_SHARE = {"NR": 0.30, "WR": 0.28, "SR": 0.25, "ER": 0.12, "NER": 0.05}
NATIONAL_DAILY_GWH_2019 = 1300.0  # GWh/day scale anchor

GDP_2019_NATIONAL = 2.85e12
STABLE_ANCHORS = {
    2020: 3.6e12,
    2030: 3.6e12 * 1.078 ** 10,
    2040: 2.8e13 / 1.062 ** 10,
    2050: 2.8e13,
}

SEGMENT_SALES_2019 = {"E2W": 20.0e6, "E3W": 0.7e6, "E4W": 3.4e6}
AC_ANCHOR_2019_TWH = 32.7

WX_YEARS = range(2014, 2020)


def _days(y0: int, y1: int):
    d = date(y0, 1, 1)
    end = date(y1, 12, 31)
    while d <= end:
        yield d
        d += timedelta(days=1)


def _gdp_history() -> dict[str, dict[int, float]]:
    """Per-state GDP 1990-2019; national growth decelerates 12% -> 7%."""
    growth = {y: 0.12 - 0.0017 * (y - 1990) for y in range(1990, 2020)}
    level = {2019: GDP_2019_NATIONAL}
    for y in range(2018, 1989, -1):
        level[y] = level[y + 1] / (1.0 + growth[y + 1])
    return {
        code: {y: level[y] * w for y in range(1990, 2020)}
        for code, _, w, _, _ in STATE_SPECS
    }


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _city_temp(city, day: date, rng_noise: float) -> float:
    """Daily-average 2m temperature (K): seasonal sinusoid, latitude lapse."""
    doy = day.timetuple().tm_yday
    seasonal = 8.0 * math.sin(2 * math.pi * (doy - 105) / 365.0)
    base = 302.0 - 0.45 * (city.lat - 20.0)
    return base + seasonal + rng_noise


def _weather_daily_rows(catalog: CityCatalog, seed: int):
    rows = []
    temps: dict[tuple[str, date], float] = {}
    for region in Region:
        for city in catalog.cities(region):
            rng = stream(seed, "fixture-weather", city.name)
            for day in _days(2014, 2019):
                t_avg = _city_temp(city, day, rng.normal(0.0, 1.5))
                spread = abs(rng.normal(4.0, 1.0)) + 0.5
                t_min, t_max = t_avg - spread, t_avg + spread
                temps[(city.name, day)] = t_avg
                row = [city.name, day.isoformat()]
                for var in WEATHER_VARS:
                    if var in ("t2m", "t10m"):
                        off = 0.0 if var == "t2m" else -0.8
                        row += [f"{t_min + off:.3f}", f"{t_max + off:.3f}", f"{t_avg + off:.3f}"]
                    elif var.startswith("qv"):
                        q = 0.012 + 0.0006 * (t_avg - 295.0) + rng.normal(0, 0.0005)
                        q = max(q, 1e-4)
                        row += [f"{q * 0.85:.6f}", f"{q * 1.15:.6f}", f"{q:.6f}"]
                    elif var.startswith(("u", "v")):
                        wv = rng.normal(1.5, 1.0)
                        row += [f"{wv - 1.0:.3f}", f"{wv + 1.0:.3f}", f"{wv:.3f}"]
                    else:  # precipitable columns
                        tq = abs(rng.normal(25.0, 6.0)) + 1.0
                        row += [f"{tq * 0.8:.3f}", f"{tq * 1.2:.3f}", f"{tq:.3f}"]
                rows.append(row)
    return rows, temps


def _region_temp(catalog, temps, region: Region, day: date) -> float:
    return sum(temps[(c.name, day)] * c.pop_weight for c in catalog.cities(region))


def _demand_rows(catalog, temps, gdp_hist, seed: int):
    """Planted signal: energy ~ region GDP x (1 + 0.25 * temp z-score)."""
    by_region_state = {}
    for code, rg, w, _, _ in STATE_SPECS:
        by_region_state.setdefault(rg, []).append((code, w))
    region_gdp = {
        rg: {y: sum(gdp_hist[c][y] for c, _ in members) for y in range(1990, 2020)}
        for rg, members in by_region_state.items()
    }
    rows = []
    for region in Region:
        rg = region.value
        rng = stream(seed, "fixture-demand", rg)
        t_series = np.array([_region_temp(catalog, temps, region, d)
                             for d in _days(2014, 2019)])
        t_mean, t_std = t_series.mean(), t_series.std()
        scale = (NATIONAL_DAILY_GWH_2019 * 1000.0 * REGION_DEMAND_SHARE[rg]
                 / region_gdp[rg][2019])
        for i, day in enumerate(_days(2014, 2019)):
            z = (t_series[i] - t_mean) / t_std
            energy = region_gdp[rg][day.year] * scale * (1.0 + 0.25 * z)
            energy *= 1.0 + rng.normal(0.0, 0.03)
            pmr = 1.32 + 0.06 * z + rng.normal(0.0, 0.02)
            pmr = max(pmr, 1.05)
            peak = energy / 24.0 * pmr
            rows.append([day.isoformat(), rg, f"{peak:.3f}", f"{energy:.3f}"])
    return rows


def _reference_rows(seed: int):
    """2015 hourly reference: evening-peak day shape, seasonal envelope."""
    hours = np.arange(24)
    evening = np.exp(-0.5 * ((hours - 20.0) / 2.5) ** 2)
    midday = 0.5 * np.exp(-0.5 * ((hours - 12.0) / 3.5) ** 2)
    night_dip = -0.35 * np.exp(-0.5 * ((hours - 4.0) / 2.5) ** 2)
    base_shape = 1.0 + evening + midday + night_dip
    rows = []
    for region in Region:
        rg = region.value
        rng = stream(seed, "fixture-reference", rg)
        level = NATIONAL_DAILY_GWH_2019 * 1000.0 * REGION_DEMAND_SHARE[rg] / 24.0 * 0.8
        d = date(2015, 1, 1)
        while d.year == 2015:
            doy = d.timetuple().tm_yday
            seasonal = 1.0 + 0.15 * math.sin(2 * math.pi * (doy - 105) / 365.0)
            wk = 0.94 if d.weekday() >= 5 else 1.0
            day_vals = level * seasonal * wk * base_shape \
                * (1.0 + rng.normal(0.0, 0.02, size=24))
            for h in range(24):
                ts = f"{d.isoformat()}T{h:02d}:00:00"
                rows.append([rg, ts, f"{max(day_vals[h], 1.0):.3f}"])
            d += timedelta(days=1)
    return rows


def _population_rows():
    pop_2020 = {"DL": 31e6, "UP": 230e6, "PB": 30e6, "MH": 123e6, "GJ": 64e6,
                "WB": 99e6, "BR": 124e6, "KA": 68e6, "TN": 77e6, "AS": 36e6}
    rows = []
    for code, p0 in pop_2020.items():
        for y in range(1990, 2051):
            pop = p0 * (1.0 + 0.011) ** (y - 2020)
            rows.append([code, y, f"{pop:.0f}"])
    return rows


def _vehicle_sales_rows(gdp_hist, seed: int):
    rows = []
    national_2019 = sum(h[2019] for h in gdp_hist.values())
    for code, _, w, _, _ in STATE_SPECS:
        rng = stream(seed, "fixture-sales", code)
        for seg, nat_units in SEGMENT_SALES_2019.items():
            k = nat_units * w / gdp_hist[code][2019]
            for y in range(2010, 2020):
                units = k * gdp_hist[code][y] * (1.0 + rng.normal(0.0, 0.02))
                rows.append([code, y, seg, f"{max(units, 0.0):.0f}"])
    return rows


def _ac_market_rows():
    """Yearly rows 2005-2050; baseline cohort energy over 2010-2019 is
    rescaled to hit the 32.7 TWh 2019 anchor (10-year unit lifetime)."""
    years = list(range(2005, 2051))
    sold = {}
    for y in years:
        if y <= 2019:
            sold[y] = 1.6e6 + (y - 2005) * 0.28e6
        else:
            sold[y] = sold.get(2019, 5.5e6) * (1.0 + 0.065) ** (y - 2019)
    base_kwh = {y: 1100.0 + 2.0 * max(0, y - 2010) for y in years}
    eff_kwh = {y: base_kwh[y] * max(0.60, 1.0 - 0.012 * max(0, y - 2015)) for y in years}
    anchor_kwh = sum(sold[c] * base_kwh[c] for c in range(2010, 2020))
    scale = AC_ANCHOR_2019_TWH * 1e9 / anchor_kwh
    rows = []
    for y in years:
        rows.append([y, "baseline", f"{sold[y] * scale:.0f}", f"{base_kwh[y]:.1f}"])
        rows.append([y, "efficient", f"{sold[y] * scale:.0f}", f"{eff_kwh[y]:.1f}"])
    return rows


def _gauss24(center: float, width: float, floor: float = 0.05) -> np.ndarray:
    h = np.arange(24.0)
    # circular distance so late-evening peaks wrap cleanly past midnight
    dist = np.minimum(np.abs(h - center), 24.0 - np.abs(h - center))
    return floor + np.exp(-0.5 * (dist / width) ** 2)


def _profile_rows():
    rows = []

    def add(context, season, income, dtype, weights):
        w = weights / weights.sum()
        rows.append([context, season, income, dtype] + [f"{x:.6f}" for x in w])

    centers = {"low": 21.0, "mid": 20.0, "high": 15.0}
    for income, c in centers.items():
        for season, amp in (("summer", 1.0), ("winter", 0.45)):
            for dtype in ("weekday", "weekend"):
                bump = 0.15 if dtype == "weekend" else 0.0
                add("residential", season, income, dtype,
                    _gauss24(c - 1.0 * bump, 2.5 + bump) * amp + 0.1)
    for season, amp in (("summer", 1.0), ("winter", 0.5)):
        for dtype, width in (("weekday", 3.5), ("weekend", 4.5)):
            add("commercial", season, "all", dtype,
                _gauss24(13.0, width) * amp + 0.08)

    add("home", "all", "all", "all", _gauss24(20.0, 2.5))
    add("work", "all", "all", "all", _gauss24(10.0, 2.5))
    add("public", "all", "all", "all",
        0.6 * _gauss24(13.0, 3.0) + 0.4 * _gauss24(19.0, 3.0))
    return rows


def _ev_params_rows():
    return [
        ["E2W", 0.025, 2.0, 4.0],
        ["E3W", 0.060, 5.0, 10.0],
        ["E4W", 0.150, 20.0, 60.0],
    ]


def write_fixtures(out_dir, seed: int = 42) -> Path:
    """Generate the full fixture set plus config.json; returns config path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    catalog = CityCatalog()
    gdp_hist = _gdp_history()

    wx_rows, temps = _weather_daily_rows(catalog, seed)
    wx_header = ["city", "date"] + [
        f"{v}_{s}" for v in WEATHER_VARS for s in ("min", "max", "avg")
    ]
    _write_csv(out / "weather_daily.csv", wx_header, wx_rows)

    _write_csv(out / "demand_daily.csv", ["date", "region", "peak_mw", "energy_mwh"],
               _demand_rows(catalog, temps, gdp_hist, seed))
    _write_csv(out / "reference_2015.csv", ["region", "timestamp", "mw"],
               _reference_rows(seed))
    _write_csv(out / "gdp_state.csv", ["state", "year", "gdp_usd"],
               [[c, y, f"{v:.6e}"] for c, h in gdp_hist.items() for y, v in sorted(h.items())])
    _write_csv(out / "gdp_stable_anchors.csv", ["year", "gdp_usd"],
               [[y, f"{v:.6e}"] for y, v in sorted(STABLE_ANCHORS.items())])
    _write_csv(out / "population_state.csv", ["state", "year", "pop"], _population_rows())
    _write_csv(out / "vehicle_sales.csv", ["state", "year", "segment", "units"],
               _vehicle_sales_rows(gdp_hist, seed))
    _write_csv(out / "ac_market.csv", ["year", "scenario", "units_sold", "unit_kwh_year"],
               _ac_market_rows())
    _write_csv(out / "ev_params.csv", ["segment", "efficiency", "short_kwh", "long_kwh"],
               _ev_params_rows())
    _write_csv(out / "profiles.csv",
               ["context", "season", "income", "daytype"] + [f"h{i}" for i in range(24)],
               _profile_rows())

    cfg = DemandConfig(
        seed=seed,
        inputs=InputPaths(root=str(out)),
        states=[StateSpec(c, rg, urban_fraction=u, com_res_ratio=r)
                for c, rg, _, u, r in STATE_SPECS],
    )
    cfg_path = out / "config.json"
    save_config(cfg, cfg_path)
    return cfg_path
