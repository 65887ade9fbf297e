"""GDP projection: curve fits per scenario, stable anchor table, state shares.

Scenarios: rapid follows a refitted exponential, slow a refitted Gompertz,
stable a published decade-anchor table with constant-growth interpolation.
All three are re-anchored to pass through the same observed 2020 GDP.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvefit import GrowthCurve, fit_exponential, fit_gompertz
from .errors import MissingStableTable, MissingState, SingularFit

PROJECTION_YEARS = range(2020, 2051)


class _UseNationalRates(Exception):
    """Internal: route a state path through national growth factors."""


@dataclass
class GdpPath:
    geography: str           # state code or "IN"
    scenario: str            # slow | stable | rapid
    values: dict[int, float] = field(default_factory=dict)

    def __getitem__(self, year: int) -> float:
        return self.values[year]

    def years(self):
        return sorted(self.values)


@dataclass
class StateShare:
    state: str
    year: int
    share: float


def interpolate_geometric(anchors: dict[int, float], year: int) -> float:
    """Constant-growth interpolation between bracketing anchor years."""
    ys = sorted(anchors)
    if year <= ys[0]:
        return anchors[ys[0]]
    if year >= ys[-1]:
        return anchors[ys[-1]]
    for y0, y1 in zip(ys, ys[1:]):
        if y0 <= year <= y1:
            g = (anchors[y1] / anchors[y0]) ** (1.0 / (y1 - y0))
            return anchors[y0] * g ** (year - y0)
    raise AssertionError("unreachable")


def project_gdp(geography: str, scenario: str, curve: GrowthCurve | None = None,
                stable_anchors: dict[int, float] | None = None,
                anchor_2020: float | None = None,
                history: dict[int, float] | None = None) -> GdpPath:
    """Annual GDP for 2020-2050.

    slow/rapid evaluate the fitted curve; stable interpolates the anchor
    table. When anchor_2020 is given, curve paths are rescaled so all
    scenarios pass through it.
    """
    values: dict[int, float] = {}
    if scenario == "stable":
        if not stable_anchors:
            raise MissingStableTable("stable scenario needs the anchor table")
        for y in PROJECTION_YEARS:
            values[y] = interpolate_geometric(stable_anchors, y)
    else:
        if curve is None:
            raise SingularFit(f"{scenario} scenario needs a fitted curve")
        raw = {y: float(curve(y)) for y in PROJECTION_YEARS}
        scale = 1.0
        if anchor_2020 is not None and raw[2020] > 0:
            scale = anchor_2020 / raw[2020]
        values = {y: v * scale for y, v in raw.items()}

    path = GdpPath(geography, scenario, values)
    if history:
        for y, v in history.items():
            if y < 2020:
                path.values[y] = v
    lo = min(path.values.values())
    if lo <= 0:
        raise SingularFit(f"nonpositive GDP in {scenario} path")
    return path


@dataclass
class GdpModel:
    """All scenario paths for the nation and each state, plus fit audit."""
    national: dict[str, GdpPath]
    by_state: dict[str, dict[str, GdpPath]]
    curves: dict[str, dict]          # audit record for the run manifest

    def region_path(self, scenario: str, state_codes: list[str]) -> dict[int, float]:
        years = self.by_state[state_codes[0]][scenario].years()
        return {
            y: sum(self.by_state[s][scenario].values[y] for s in state_codes)
            for y in years
        }


def build_gdp_model(state_history: dict[str, dict[int, float]],
                    stable_anchors: dict[int, float]) -> GdpModel:
    """Fit national and per-state curves and produce all scenario paths.

    A state whose slow/rapid fit fails falls back to the national scenario
    growth factors applied to its last observed value.
    """
    years = sorted(next(iter(state_history.values())))
    national_hist = {
        y: sum(h[y] for h in state_history.values()) for y in years
    }
    xs = np.array(years, float)
    ys = np.array([national_hist[y] for y in years])
    exp_curve = fit_exponential(xs, ys)
    gom_curve = fit_gompertz(xs, ys)
    anchor_2020 = stable_anchors.get(2020)

    national = {
        "rapid": project_gdp("IN", "rapid", curve=exp_curve,
                             anchor_2020=anchor_2020, history=national_hist),
        "slow": project_gdp("IN", "slow", curve=gom_curve,
                            anchor_2020=anchor_2020, history=national_hist),
        "stable": project_gdp("IN", "stable", stable_anchors=stable_anchors,
                              history=national_hist),
    }

    curves_audit = {
        "national": {
            "exponential": {"A": exp_curve.A, "B": exp_curve.B, "C": exp_curve.C,
                            "r2": exp_curve.fit_r2},
            "gompertz": {"A": gom_curve.A, "B": gom_curve.B, "mu": gom_curve.mu,
                         "C": gom_curve.C, "r2": gom_curve.fit_r2},
        },
        "fallback_states": [],
    }

    last_year = years[-1]
    by_state: dict[str, dict[str, GdpPath]] = {}
    for code, hist in state_history.items():
        sx = np.array(sorted(hist), float)
        sy = np.array([hist[y] for y in sorted(hist)])
        paths: dict[str, GdpPath] = {}
        for scenario in ("rapid", "slow", "stable"):
            try:
                if scenario == "stable":
                    # no per-state anchor table exists; apply national rates
                    raise _UseNationalRates
                curve = fit_exponential(sx, sy) if scenario == "rapid" else fit_gompertz(sx, sy)
                # anchor the state at its observed level scaled by the national
                # 2020 uplift, so state shares stay consistent with the nation
                anchor = hist[last_year] * (national[scenario].values[2020] / national_hist[last_year])
                paths[scenario] = project_gdp(code, scenario, curve=curve,
                                              anchor_2020=anchor, history=hist)
            except (SingularFit, _UseNationalRates):
                if scenario != "stable":
                    curves_audit["fallback_states"].append({"state": code, "scenario": scenario})
                nat = national[scenario]
                vals = {
                    y: hist[last_year] * nat.values[y] / nat.values[2020]
                    * (nat.values[2020] / national_hist[last_year])
                    for y in PROJECTION_YEARS
                }
                p = GdpPath(code, scenario, vals)
                for y, v in hist.items():
                    p.values[y] = v
                paths[scenario] = p
        by_state[code] = paths

    return GdpModel(national=national, by_state=by_state, curves=curves_audit)


def state_shares(gdp_by_state: dict[str, float], population: dict[str, float],
                 region_states: list[str], year: int) -> list[StateShare]:
    """Within-region shares: state GDP-per-capita weighted by population,
    i.e. the state's GDP over the region's GDP."""
    total = 0.0
    for code in region_states:
        if code not in gdp_by_state or code not in population:
            raise MissingState(f"{code} missing GDP or population for {year}")
        if population[code] <= 0:
            raise MissingState(f"{code} has nonpositive population for {year}")
        total += gdp_by_state[code]
    if total <= 0:
        raise MissingState(f"region GDP nonpositive at {year}")
    return [
        StateShare(code, year, gdp_by_state[code] / total)
        for code in region_states
    ]
