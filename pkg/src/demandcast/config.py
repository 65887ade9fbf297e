"""Run configuration: one JSON document, dataclass-backed, shipped defaults.

All placeholder constants (coincidence factors, weather-scaling beta,
commute distances, range-mix endpoint, non-rapid EV target years) live
here so a run is fully described by (config, seed, input files).
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .regions import Region

SNAPSHOT_YEARS = [2020, 2025, 2030, 2035, 2040, 2045, 2050]

GDP_SCENARIOS = ["slow", "stable", "rapid"]
CHARGING_SCHEMES = ["home", "work", "public"]
COOLING_SCENARIOS = ["baseline", "efficient"]


@dataclass
class StateSpec:
    code: str
    region: str
    urban_fraction: float = 0.5
    com_res_ratio: float = 0.6  # commercial / residential consumption


@dataclass
class InputPaths:
    root: str = "fixtures"
    demand_daily: str = "demand_daily.csv"
    weather_hourly: str = "weather_hourly.csv"
    weather_daily: str = "weather_daily.csv"
    reference_2015: str = "reference_2015.csv"
    gdp_state: str = "gdp_state.csv"
    gdp_stable_anchors: str = "gdp_stable_anchors.csv"
    population_state: str = "population_state.csv"
    vehicle_sales: str = "vehicle_sales.csv"
    ac_market: str = "ac_market.csv"
    ev_params: str = "ev_params.csv"
    profiles: str = "profiles.csv"

    def path(self, name: str) -> Path:
        return Path(self.root) / getattr(self, name)


@dataclass
class BauConfig:
    l1_ratio: float = 0.9
    alpha_grid_size: int = 30
    alpha_min_ratio: float = 1e-4
    max_sweeps: int = 10_000
    tol: float = 1e-8
    train_years: tuple[int, int] = (2014, 2019)
    validation_year: int = 2019


@dataclass
class HourlyConfig:
    beta: float = 0.05
    scale_min: float = 0.9
    scale_max: float = 1.1


@dataclass
class CoolingConfig:
    coincidence_weekday: float = 0.7
    coincidence_weekend: float = 0.5
    kernel: tuple[float, ...] = (0.25, 0.5, 0.25)
    summer_months: tuple[int, ...] = (4, 5, 6, 7, 8, 9)
    summer_day_weight: float = 2.0
    winter_day_weight: float = 1.0
    unit_lifetime_years: int = 10
    cdd_base_year: int = 2018
    cdd_horizon_year: int = 2050
    cdd_uplift: float = 0.5
    cdd_enabled: bool = True


@dataclass
class EvConfig:
    fleet_2020_total: float = 152_000.0
    segment_mix_2020: dict = field(
        default_factory=lambda: {"E2W": 0.6, "E3W": 0.3, "E4W": 0.1}
    )
    share_2020: dict = field(
        default_factory=lambda: {"E2W": 0.01, "E3W": 0.01, "E4W": 0.005}
    )
    target_share: dict = field(
        default_factory=lambda: {"E2W": 1.0, "E3W": 0.30, "E4W": 0.30}
    )
    target_year: dict = field(
        default_factory=lambda: {"rapid": 2030, "stable": 2035, "slow": 2040}
    )
    # E3W/E4W keep electrifying after the target year at this share/yr.
    post_target_slope: float = 0.01
    range_mix_2050_long: float = 0.8
    urban_km_per_day: float = 25.0
    rural_km_per_day: float = 40.0


@dataclass
class DemandConfig:
    seed: int = 42
    inputs: InputPaths = field(default_factory=InputPaths)
    states: list[StateSpec] = field(default_factory=list)
    gdp_scenarios: list[str] = field(default_factory=lambda: list(GDP_SCENARIOS))
    charging_schemes: list[str] = field(default_factory=lambda: list(CHARGING_SCHEMES))
    cooling_scenarios: list[str] = field(default_factory=lambda: list(COOLING_SCENARIOS))
    snapshot_years: list[int] = field(default_factory=lambda: list(SNAPSHOT_YEARS))
    detailed_year: int = 2050
    bau: BauConfig = field(default_factory=BauConfig)
    hourly: HourlyConfig = field(default_factory=HourlyConfig)
    cooling: CoolingConfig = field(default_factory=CoolingConfig)
    ev: EvConfig = field(default_factory=EvConfig)

    def states_by_region(self) -> dict[Region, list[StateSpec]]:
        out: dict[Region, list[StateSpec]] = {r: [] for r in Region}
        for s in self.states:
            out[Region(s.region)].append(s)
        return out

    def state(self, code: str) -> StateSpec:
        for s in self.states:
            if s.code == code:
                return s
        raise KeyError(code)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()


def _build(cls, data: dict):
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name not in data:
            continue
        v = data[f.name]
        if dataclasses.is_dataclass(f.type) if isinstance(f.type, type) else False:
            v = _build(f.type, v)
        kwargs[f.name] = v
    return cls(**kwargs)


def load_config(path) -> DemandConfig:
    """Read a JSON config; missing keys take shipped defaults."""
    data = json.loads(Path(path).read_text())
    cfg = DemandConfig()
    if "seed" in data:
        cfg.seed = int(data["seed"])
    if "inputs" in data:
        cfg.inputs = _build(InputPaths, data["inputs"])
    if "states" in data:
        cfg.states = [_build(StateSpec, s) for s in data["states"]]
    for key in ("gdp_scenarios", "charging_schemes", "cooling_scenarios",
                "snapshot_years", "detailed_year"):
        if key in data:
            setattr(cfg, key, data[key])
    if "bau" in data:
        cfg.bau = _build(BauConfig, data["bau"])
    if "hourly" in data:
        cfg.hourly = _build(HourlyConfig, data["hourly"])
    if "cooling" in data:
        c = dict(data["cooling"])
        if "kernel" in c:
            c["kernel"] = tuple(c["kernel"])
        if "summer_months" in c:
            c["summer_months"] = tuple(c["summer_months"])
        cfg.cooling = _build(CoolingConfig, c)
    if "ev" in data:
        cfg.ev = _build(EvConfig, data["ev"])
    return cfg


def save_config(cfg: DemandConfig, path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2, default=str) + "\n")
