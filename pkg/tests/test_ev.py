import numpy as np
import pytest

from demandcast.config import EvConfig
from demandcast.errors import InsufficientHistory, MissingProfile
from demandcast.ev import (
    SEGMENTS,
    FleetStateYear,
    charging_profile,
    electrification_share,
    ev_hourly,
    fleet_energy_day,
    project_sales,
    range_mix,
)


def test_project_sales_linear_oracle():
    # planted line: sales = 2e-9 * gdp + 50
    gdp = {y: 1e12 + 5e10 * (y - 2015) for y in range(2015, 2020)}
    sales = {y: 2e-9 * g + 50.0 for y, g in gdp.items()}
    path = {2030: 3e12, 2040: 5e12}
    out = project_sales(sales, gdp, path, [2030, 2040])
    assert out[2030] == pytest.approx(2e-9 * 3e12 + 50.0, rel=1e-9)
    assert out[2040] == pytest.approx(2e-9 * 5e12 + 50.0, rel=1e-9)


def test_project_sales_floor_and_history():
    gdp = {2015: 1.0, 2016: 2.0, 2017: 3.0}
    sales = {2015: 30.0, 2016: 20.0, 2017: 10.0}  # negative slope
    out = project_sales(sales, gdp, {2030: 100.0}, [2030])
    assert out[2030] == 0.0
    with pytest.raises(InsufficientHistory):
        project_sales({2015: 1.0, 2016: 2.0}, gdp, {2030: 1.0}, [2030])


def test_electrification_share_targets():
    cfg = EvConfig()
    # targets reached exactly at the scenario target year
    assert electrification_share("E2W", "rapid", 2030, cfg) == pytest.approx(1.0)
    assert electrification_share("E3W", "rapid", 2030, cfg) == pytest.approx(0.30)
    assert electrification_share("E4W", "rapid", 2030, cfg) == pytest.approx(0.30)
    assert electrification_share("E2W", "stable", 2035, cfg) == pytest.approx(1.0)
    assert electrification_share("E2W", "slow", 2040, cfg) == pytest.approx(1.0)
    # starts at the calibrated 2020 share
    assert electrification_share("E2W", "rapid", 2020, cfg) == cfg.share_2020["E2W"]
    assert electrification_share("E2W", "rapid", 2019, cfg) == 0.0


def test_electrification_share_after_target():
    cfg = EvConfig()
    assert electrification_share("E2W", "rapid", 2045, cfg) == 1.0
    assert electrification_share("E3W", "rapid", 2040, cfg) == pytest.approx(
        0.30 + cfg.post_target_slope * 10)
    assert electrification_share("E3W", "rapid", 2150, cfg) == 1.0  # capped


def test_electrification_share_midpoint():
    cfg = EvConfig()
    start = cfg.share_2020["E2W"]
    mid = electrification_share("E2W", "rapid", 2025, cfg)
    assert mid == pytest.approx(start + (1.0 - start) * 0.5)


def test_range_mix():
    assert range_mix(2020) == (1.0, 0.0)
    s, l = range_mix(2050)
    assert (s, l) == pytest.approx((0.2, 0.8))
    s, l = range_mix(2035)
    assert s + l == pytest.approx(1.0)
    with pytest.raises(ValueError):
        range_mix(2019)


def test_fleet_energy_day_oracle():
    fleet = FleetStateYear("KA", 2030, {"E2W": 1000.0, "E3W": 0.0, "E4W": 0.0},
                           urban_fraction=0.6)
    mwh, sessions, per_session = fleet_energy_day(fleet, "E2W", 0.03, 25.0, 40.0)
    # 600 urban * 25 km + 400 rural * 40 km = 31,000 km/day
    assert mwh == pytest.approx(31_000 * 0.03 / 1000.0)
    assert sessions == pytest.approx(600 * 0.5 + 400)
    assert per_session == pytest.approx(31_000 * 0.03 / 700.0)
    assert fleet_energy_day(fleet, "E3W", 0.05, 25.0, 40.0) == (0.0, 0.0, 0.0)


def test_charging_schemes_move_sessions_not_energy(bundle):
    profs = {ch: charging_profile(bundle.profiles, ch)
             for ch in ("home", "work", "public")}
    for p in profs.values():
        assert p.sum() == pytest.approx(1.0, abs=1e-12)
    # home charging peaks in the evening, work charging in the morning
    assert int(np.argmax(profs["home"])) >= 17
    assert 7 <= int(np.argmax(profs["work"])) <= 12
    with pytest.raises(MissingProfile):
        charging_profile(bundle.profiles, "wireless")


def test_ev_hourly_scheme_invariant_energy(bundle):
    cfg = EvConfig()
    fleet = FleetStateYear("KA", 2050,
                           {"E2W": 5e6, "E3W": 1e6, "E4W": 4e5}, 0.55)
    params = bundle.ev_params
    totals = {}
    for scheme in ("home", "work", "public"):
        traces = ev_hourly("KA", 2050, scheme, fleet, params,
                           bundle.profiles, cfg)
        assert set(traces) == set(SEGMENTS)
        for seg in SEGMENTS:
            assert traces[seg].values.shape == (8760,)
            assert np.all(traces[seg].values >= 0)
        totals[scheme] = {seg: traces[seg].values.sum() for seg in SEGMENTS}
    for seg in SEGMENTS:
        assert totals["work"][seg] == pytest.approx(totals["home"][seg], rel=1e-12)
        assert totals["public"][seg] == pytest.approx(totals["home"][seg], rel=1e-12)
        # annual sum is 365 x the daily fleet energy
        daily, _, _ = fleet_energy_day(fleet, seg, params[seg]["efficiency"],
                                       cfg.urban_km_per_day, cfg.rural_km_per_day)
        assert totals["home"][seg] == pytest.approx(365 * daily, rel=1e-9)


def _build_fleet(pipeline, scenario):
    from demandcast.ev import build_fleet_model
    cfg = pipeline.cfg
    years = list(cfg.snapshot_years)
    codes = [s.code for s in cfg.states]
    return build_fleet_model(
        scenario, cfg.states, pipeline.national_share_map(scenario, 2020),
        pipeline.bundle.vehicle_sales, pipeline.bundle.gdp_state,
        {c: pipeline.gdp_model.by_state[c][scenario].values for c in codes},
        years, cfg.ev)


def test_fleet_model_2020_anchor(pipeline):
    model = _build_fleet(pipeline, "stable")
    total_2020 = sum(
        sum(model.fleet(spec.code, 2020).counts.values())
        for spec in pipeline.cfg.states
    )
    assert total_2020 == pytest.approx(pipeline.cfg.ev.fleet_2020_total, rel=1e-9)


def test_fleet_grows_with_gdp_scenario(pipeline):
    slow = _build_fleet(pipeline, "slow")
    rapid = _build_fleet(pipeline, "rapid")
    code = pipeline.cfg.states[0].code
    slow_total = sum(slow.fleet(code, 2050).counts.values())
    rapid_total = sum(rapid.fleet(code, 2050).counts.values())
    assert rapid_total > slow_total
    assert slow_total > sum(slow.fleet(code, 2020).counts.values())
