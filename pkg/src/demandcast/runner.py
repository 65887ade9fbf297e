"""Pipeline orchestration: the 18-scenario matrix end to end.

Per GDP scenario the business-as-usual daily projections (with seeded
natural variation) are downscaled to regional hourly traces; cooling and
EV component traces are computed per state and stacked additively; tables
aggregate states -> regions -> nation and land in the
{gdp}/{charging}/{cooling}/{detailed|summary}/{GEO}.csv hierarchy.
"""

from __future__ import annotations

import csv
import hashlib
import json
import warnings
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from . import bau, cooling as cooling_mod, ev as ev_mod
from .config import DemandConfig
from .errors import ComponentLengthMismatch, IoFailure, MisalignedTimestamps
from .gdp import build_gdp_model, state_shares
from .hourly import build_clusters, synthesize_year, weather_scale_factor, year_days
from .ingest import InputBundle, load_bundle
from .regions import CityCatalog, Region
from .rng import stream
from .variation import apply_noise, estimate_noise

COLUMNS = ["DateTime", "Base", "Com AC", "Res AC", "E2W", "E3W", "E4W"]
COMPONENTS = COLUMNS[1:]


@dataclass(frozen=True)
class ScenarioDescriptor:
    gdp: str
    charging: str
    cooling: str
    seed: int

    def folder(self) -> str:
        return f"{self.gdp}/{self.charging}/{self.cooling}"


def enumerate_scenarios(cfg: DemandConfig) -> list[ScenarioDescriptor]:
    """Cartesian product in (gdp, charging, cooling) order; duplicate axis
    values are dropped with a warning."""
    axes = []
    for name, values in (("gdp", cfg.gdp_scenarios),
                         ("charging", cfg.charging_schemes),
                         ("cooling", cfg.cooling_scenarios)):
        unique = list(dict.fromkeys(values))
        if len(unique) != len(values):
            warnings.warn(f"duplicate values on {name} axis deduplicated", stacklevel=2)
        axes.append(unique)
    return [
        ScenarioDescriptor(g, ch, co, cfg.seed)
        for g in axes[0] for ch in axes[1] for co in axes[2]
    ]


@dataclass
class OutputTable:
    datetimes: list[str]
    data: np.ndarray  # (rows, 6), column order == COMPONENTS

    def column(self, name: str) -> np.ndarray:
        return self.data[:, COMPONENTS.index(name)]


def assemble(components: dict[str, np.ndarray], datetimes: list[str]) -> OutputTable:
    """Stack the six component traces; no cross-component netting."""
    n = len(datetimes)
    cols = []
    for name in COMPONENTS:
        trace = np.asarray(components[name], float)
        if len(trace) != n:
            raise ComponentLengthMismatch(f"{name}: {len(trace)} values, expected {n}")
        cols.append(trace)
    data = np.column_stack(cols)
    if np.any(data < 0):
        raise ValueError("negative component value in assembled table")
    return OutputTable(list(datetimes), data)


def aggregate(tables: list[OutputTable]) -> OutputTable:
    """Columnwise sum of member tables aligned on DateTime."""
    first = tables[0]
    for t in tables[1:]:
        if t.datetimes != first.datetimes:
            raise MisalignedTimestamps("member tables disagree on DateTime")
    return OutputTable(list(first.datetimes),
                       np.sum([t.data for t in tables], axis=0))


def write_table(path: Path, table: OutputTable) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(COLUMNS)
            for ts, row in zip(table.datetimes, table.data):
                w.writerow([ts] + [f"{v:.10g}" for v in row])
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def hourly_datetimes(year: int) -> list[str]:
    return [
        f"{d.isoformat()}T{h:02d}:00:00"
        for d in year_days(year) for h in range(24)
    ]


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class Pipeline:
    """Shared, immutable model state for a run: fitted regressions, noise
    models, GDP paths, reference clusters."""

    def __init__(self, cfg: DemandConfig, bundle: InputBundle | None = None,
                 catalog: CityCatalog | None = None):
        self.cfg = cfg
        self.catalog = catalog or CityCatalog()
        self.bundle = bundle or load_bundle(cfg)
        self.weather = bau.WeatherTable(self.bundle.weather)
        self.wx_years = [y for y in self.weather.years() if 2014 <= y <= 2019]
        self.gdp_model = build_gdp_model(self.bundle.gdp_state, self.bundle.stable_anchors)
        self.states_by_region = cfg.states_by_region()
        self.models: dict[tuple[Region, str], bau.PenalizedLinearModel] = {}
        self.noise_models = {}
        self.backtest_rows: list[dict] = []
        self._region_gdp_hist = {
            region: {
                y: sum(self.bundle.gdp_state[s.code][y] for s in specs)
                for y in sorted(next(iter(self.bundle.gdp_state.values())))
            }
            for region, specs in self.states_by_region.items()
        }
        self._demand_by_region: dict[Region, dict[date, tuple[float, float]]] = {}
        for rec in self.bundle.demand:
            self._demand_by_region.setdefault(rec.region, {})[rec.day] = (
                rec.peak_mw, rec.energy_mwh)
        self.clusters = {r: build_clusters(ref) for r, ref in self.bundle.reference.items()}
        self._ref_temp_2015 = self._region_daily_temps(2015)
        self._fitted = False

    # --- weather helpers ---------------------------------------------------

    def _region_daily_temps(self, year: int) -> dict[Region, dict[date, float]]:
        out: dict[Region, dict[date, float]] = {}
        for region in Region:
            cities = self.catalog.cities(region)
            temps = {}
            for d in year_days(year):
                temps[d] = sum(
                    self.weather.stats(c.name, d)["t2m"][2] * c.pop_weight
                    for c in cities
                )
            out[region] = temps
        return out

    # --- fitting -----------------------------------------------------------

    def fit_bau(self) -> None:
        val_year = self.cfg.bau.validation_year
        for region in Region:
            demand = self._demand_by_region.get(region, {})
            dates = sorted(demand)
            gdp_hist = self._region_gdp_hist[region]
            fm = bau.build_features(self.weather, gdp_hist, region, self.catalog, dates)
            Xs = fm.standardized()
            years = np.array([d.year for d in dates])
            train_mask = years < val_year
            val_mask = years == val_year
            for target, idx in (("peak", 0), ("energy", 1)):
                y = np.array([demand[d][idx] for d in dates])
                alpha, full_fit = bau.select_alpha(
                    fm, y, val_year, self.cfg.bau.l1_ratio,
                    max_sweeps=self.cfg.bau.max_sweeps, tol=self.cfg.bau.tol)
                from .elasticnet import fit_elastic_net
                train_fit = fit_elastic_net(
                    Xs[train_mask], y[train_mask], alpha, self.cfg.bau.l1_ratio,
                    max_sweeps=self.cfg.bau.max_sweeps, tol=self.cfg.bau.tol)
                pred_val = train_fit.predict(Xs[val_mask])
                actual_val = y[val_mask]
                reg_r2 = bau.r_squared(pred_val, actual_val)
                model = bau.PenalizedLinearModel(
                    region, target, full_fit, fm,
                    train_r2=bau.r_squared(full_fit.predict(Xs), y),
                    val_r2=reg_r2, min_historical=float(y.min()))
                self.models[(region, target)] = model

                val_dates = [d for d in dates if d.year == val_year]
                residuals = dict(zip(val_dates, actual_val - pred_val))
                noise = estimate_noise(residuals, region.value, target)
                self.noise_models[(region, target)] = noise

                noisy = np.array([
                    p + _signed_noise(noise, d, self.cfg.seed)
                    for p, d in zip(pred_val, val_dates)
                ])
                noise_r2 = bau.r_squared(noisy, actual_val)
                var_ratio = float(np.var(noisy) / np.var(actual_val))
                self.backtest_rows.append({
                    "region": region.value, "target": target, "alpha": alpha,
                    "regression_r2": reg_r2, "regression_noise_r2": noise_r2,
                    "variance_ratio": var_ratio,
                })
        self._fitted = True

    # --- projection --------------------------------------------------------

    def weather_source_year(self, year: int) -> int:
        rng = stream(self.cfg.seed, "bau-weather", year)
        return int(rng.choice(self.wx_years))

    def region_gdp_scenario(self, gdp_scenario: str, region: Region, year: int) -> float:
        codes = [s.code for s in self.states_by_region[region]]
        return self.gdp_model.region_path(gdp_scenario, codes)[year]

    def project_base_daily(self, gdp_scenario: str, region: Region, year: int):
        """(dates, noisy energy MWh, noisy peak MW, noise exports)."""
        dates = year_days(year)
        src = self.weather_source_year(year)
        gdp_val = self.region_gdp_scenario(gdp_scenario, region, year)
        raw = bau.raw_rows(self.weather, gdp_val, region, self.catalog, dates,
                           source_year=src)
        all_cols = bau.region_columns(self.catalog, region)
        out = {}
        noise_vectors = {}
        for target in bau.TARGETS:
            model = self.models[(region, target)]
            series = bau.project_daily(model, raw, all_cols, dates)
            noisy, adj, _ = apply_noise(series, self.noise_models[(region, target)],
                                        self.cfg.seed)
            out[target] = noisy.values
            noise_vectors[target] = adj
        return dates, out["energy"], out["peak"], noise_vectors, src

    def day_scale(self, region: Region, year: int, source_year: int) -> dict[date, float]:
        ref = self._ref_temp_2015[region]
        ref_vals = np.array(list(ref.values()))
        ref_std = float(ref_vals.std())
        cities = self.catalog.cities(region)
        scale = {}
        hcfg = self.cfg.hourly
        for d in year_days(year):
            src_day = self.weather.mapped_day(source_year, d)
            day_temp = sum(self.weather.stats(c.name, src_day)["t2m"][2] * c.pop_weight
                           for c in cities)
            ref_day = ref[self.weather.mapped_day(2015, d)]
            scale[d] = weather_scale_factor(day_temp, ref_day, ref_std,
                                            hcfg.beta, hcfg.scale_min, hcfg.scale_max)
        return scale

    def state_share_map(self, gdp_scenario: str, year: int) -> dict[str, float]:
        shares = {}
        pop = {s: self._pop_at(s, year) for s in (st.code for st in self.cfg.states)}
        for region, specs in self.states_by_region.items():
            codes = [s.code for s in specs]
            gdp_vals = {c: self.gdp_model.by_state[c][gdp_scenario].values[year]
                        for c in codes}
            for sh in state_shares(gdp_vals, pop, codes, year):
                shares[sh.state] = sh.share
        return shares

    def national_share_map(self, gdp_scenario: str, year: int) -> dict[str, float]:
        codes = [s.code for s in self.cfg.states]
        gdp_vals = {c: self.gdp_model.by_state[c][gdp_scenario].values[year] for c in codes}
        total = sum(gdp_vals.values())
        return {c: v / total for c, v in gdp_vals.items()}

    def _pop_at(self, state: str, year: int) -> float:
        table = self.bundle.population[state]
        if year in table:
            return table[year]
        ys = sorted(table)
        lo = max((y for y in ys if y <= year), default=ys[0])
        hi = min((y for y in ys if y >= year), default=ys[-1])
        if lo == hi:
            return table[lo]
        w = (year - lo) / (hi - lo)
        return table[lo] * (1 - w) + table[hi] * w

    def income_weights_for(self, gdp_scenario: str, year: int) -> dict[str, dict[str, float]]:
        codes = [s.code for s in self.cfg.states]
        gdp_pc = {
            c: self.gdp_model.by_state[c][gdp_scenario].values[year] / self._pop_at(c, year)
            for c in codes
        }
        ranked = sorted(codes, key=lambda c: gdp_pc[c])
        n = len(ranked)
        return {
            c: cooling_mod.income_weights(i / (n - 1) if n > 1 else 0.5)
            for i, c in enumerate(ranked)
        }


def _signed_noise(noise_model, day, seed):
    from .variation import noise_adjustment
    return noise_adjustment(noise_model, day, seed)


# --- full run ---------------------------------------------------------------

@dataclass
class RunResult:
    out_dir: Path
    manifest: dict
    tables: dict = field(default_factory=dict)  # (folder, kind, geo) -> OutputTable


def run_matrix(cfg: DemandConfig, out_dir, pipeline: Pipeline | None = None,
               detailed_year: int | None = None, keep_tables: bool = False) -> RunResult:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pl = pipeline or Pipeline(cfg)
    if not pl._fitted:
        pl.fit_bau()
    year_star = detailed_year or cfg.detailed_year
    scenarios = enumerate_scenarios(cfg)
    years = list(cfg.snapshot_years)
    gdps = list(dict.fromkeys(s.gdp for s in scenarios))
    chargings = list(dict.fromkeys(s.charging for s in scenarios))
    coolings = list(dict.fromkeys(s.cooling for s in scenarios))
    state_codes = [s.code for s in cfg.states]
    regions = [r for r in Region if pl.states_by_region[r]]

    ccfg = cfg.cooling
    noise_dir = out / "noise_vectors"
    noise_paths = []

    # ---- per-GDP precomputation (Base + shares) ----
    base_annual: dict[tuple[str, str, int], float] = {}   # (gdp, region, year) -> MWh
    base_trace: dict[tuple[str, str], np.ndarray] = {}    # (gdp, region) -> 8760 MW
    shares: dict[tuple[str, int], dict[str, float]] = {}
    nat_shares: dict[tuple[str, int], dict[str, float]] = {}
    repaired: dict[str, int] = {}
    for g in gdps:
        for y in years:
            shares[(g, y)] = pl.state_share_map(g, y)
            nat_shares[(g, y)] = pl.national_share_map(g, y)
        for region in regions:
            for y in years:
                dates, energy, peak, noise_vectors, src = pl.project_base_daily(g, region, y)
                base_annual[(g, region.value, y)] = float(np.sum(energy))
                for target, adj in noise_vectors.items():
                    p = noise_dir / g / f"{region.value}_{target}_{y}.csv"
                    p.parent.mkdir(parents=True, exist_ok=True)
                    with p.open("w", newline="") as fh:
                        w = csv.writer(fh)
                        w.writerow(["date", "adjustment"])
                        for d, a in zip(dates, adj):
                            w.writerow([d.isoformat(), f"{a:.10g}"])
                    noise_paths.append(str(p.relative_to(out)))
                if y == year_star:
                    scale = pl.day_scale(region, y, src)
                    hy = synthesize_year(
                        pl.clusters[region], y,
                        dict(zip(dates, energy)), dict(zip(dates, peak)),
                        region.value, cfg.seed, day_scale=scale)
                    base_trace[(g, region.value)] = hy.values
                    repaired[f"{g}/{region.value}"] = hy.repaired_days

    # ---- cooling per (gdp, cooling scenario) ----
    cool_energy: dict[tuple[str, str, str, int], tuple[float, float]] = {}
    cool_trace: dict[tuple[str, str, str], tuple[np.ndarray, np.ndarray]] = {}
    com_res = {s.code: s.com_res_ratio for s in cfg.states}
    for g in gdps:
        income_w = pl.income_weights_for(g, year_star)
        for c in coolings:
            for y in years:
                national_gwh = cooling_mod.national_cooling_energy(
                    pl.bundle.ac_market[c], y, ccfg.unit_lifetime_years)
                split = cooling_mod.split_states(
                    national_gwh, nat_shares[(g, y)], com_res, y, c)
                mult = cooling_mod.cdd_multiplier(
                    y, ccfg.cdd_base_year, ccfg.cdd_horizon_year,
                    ccfg.cdd_uplift) if ccfg.cdd_enabled else 1.0
                for e in split:
                    cool_energy[(g, c, e.state, y)] = (
                        e.residential_gwh * mult, e.commercial_gwh * mult)
                    if y == year_star:
                        res_tr, com_tr = cooling_mod.cooling_hourly(
                            e.state, y, c, e, pl.bundle.profiles,
                            income_w[e.state], ccfg)
                        cool_trace[(g, c, e.state)] = (res_tr.values, com_tr.values)

    # ---- EV per (gdp, charging) ----
    gdp_hist_by_state = pl.bundle.gdp_state
    ev_daily: dict[tuple[str, str, str, int], float] = {}  # (gdp, seg, state, year) -> MWh/day
    ev_profile = {ch: ev_mod.charging_profile(pl.bundle.profiles, ch) for ch in chargings}
    for g in gdps:
        fleet = ev_mod.build_fleet_model(
            g, cfg.states, nat_shares[(g, 2020)], pl.bundle.vehicle_sales,
            gdp_hist_by_state,
            {c: pl.gdp_model.by_state[c][g].values for c in state_codes},
            years, cfg.ev)
        for code in state_codes:
            for y in years:
                f = fleet.fleet(code, y)
                for seg in ev_mod.SEGMENTS:
                    daily, _, _ = ev_mod.fleet_energy_day(
                        f, seg, pl.bundle.ev_params[seg]["efficiency"],
                        cfg.ev.urban_km_per_day, cfg.ev.rural_km_per_day)
                    ev_daily[(g, seg, code, y)] = daily

    # ---- assemble & write ----
    dts_detailed = hourly_datetimes(year_star)
    n_days = len(year_days(year_star))
    result = RunResult(out, {})
    status = {}
    for sc in scenarios:
        g, ch, c = sc.gdp, sc.charging, sc.cooling
        state_detailed: dict[str, OutputTable] = {}
        state_summary: dict[str, OutputTable] = {}
        for code in state_codes:
            region = Region(cfg.state(code).region)
            res_tr, com_tr = cool_trace[(g, c, code)]
            comp = {
                "Base": base_trace[(g, region.value)] * shares[(g, year_star)][code],
                "Res AC": res_tr,
                "Com AC": com_tr,
            }
            for seg in ev_mod.SEGMENTS:
                comp[seg] = np.tile(
                    ev_daily[(g, seg, code, year_star)] * ev_profile[ch], n_days)
            state_detailed[code] = assemble(comp, dts_detailed)

            rows = np.empty((len(years), 6))
            for i, y in enumerate(years):
                res_gwh, com_gwh = cool_energy[(g, c, code, y)]
                rows[i] = [
                    base_annual[(g, region.value, y)] * shares[(g, y)][code] / 1000.0,
                    com_gwh,
                    res_gwh,
                    ev_daily[(g, "E2W", code, y)] * n_days / 1000.0,
                    ev_daily[(g, "E3W", code, y)] * n_days / 1000.0,
                    ev_daily[(g, "E4W", code, y)] * n_days / 1000.0,
                ]
            # summary column order is COMPONENTS: Base, Com AC, Res AC, E2W...
            state_summary[code] = OutputTable([str(y) for y in years], rows)

        region_detailed = {}
        region_summary = {}
        for region in regions:
            members = [s.code for s in pl.states_by_region[region]]
            region_detailed[region.value] = aggregate([state_detailed[m] for m in members])
            region_summary[region.value] = aggregate([state_summary[m] for m in members])
        national_detailed = aggregate(list(region_detailed.values()))
        national_summary = aggregate(list(region_summary.values()))

        folder = out / sc.folder()
        all_detailed = {**state_detailed, **region_detailed, "IN": national_detailed}
        all_summary = {**state_summary, **region_summary, "IN": national_summary}
        for geo, table in all_detailed.items():
            write_table(folder / "detailed" / f"{geo}.csv", table)
        for geo, table in all_summary.items():
            write_table(folder / "summary" / f"{geo}.csv", table)
        status[sc.folder()] = "ok"
        if keep_tables:
            for geo, table in all_detailed.items():
                result.tables[(sc.folder(), "detailed", geo)] = table
            for geo, table in all_summary.items():
                result.tables[(sc.folder(), "summary", geo)] = table

    manifest = {
        "seed": cfg.seed,
        "config_digest": cfg.digest(),
        "detailed_year": year_star,
        "input_digests": {
            name: _file_digest(cfg.inputs.path(name))
            for name in ("demand_daily", "weather_daily", "reference_2015",
                         "gdp_state", "gdp_stable_anchors", "population_state",
                         "vehicle_sales", "ac_market", "ev_params", "profiles")
            if cfg.inputs.path(name).exists()
        },
        "scenarios": status,
        "noise_vectors": sorted(noise_paths),
        "gdp_curves": pl.gdp_model.curves,
        "bau_models": [pl.models[(r, t)].manifest()
                       for r in regions for t in bau.TARGETS],
        "repaired_days": repaired,
    }
    (out / "run_manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    result.manifest = manifest
    return result


def backtest(cfg: DemandConfig, pipeline: Pipeline | None = None) -> list[dict]:
    """Hold-out report: fit on the pre-validation years, score the
    validation year, with and without injected variation."""
    pl = pipeline or Pipeline(cfg)
    if not pl._fitted:
        pl.fit_bau()
    return list(pl.backtest_rows)


def format_backtest(rows: list[dict]) -> str:
    lines = [f"{'Region':<14}{'Target':<8}{'Regression':>12}{'Regression + Noise':>20}{'Var ratio':>11}"]
    for r in rows:
        lines.append(
            f"{r['region']:<14}{r['target']:<8}{r['regression_r2']:>12.3f}"
            f"{r['regression_noise_r2']:>20.3f}{r['variance_ratio']:>11.3f}"
        )
    return "\n".join(lines)
