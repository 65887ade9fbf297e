from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demandcast.regions import Region
from demandcast.errors import EmptyPool, InfeasibleDay
from demandcast.hourly import (
    ClusterSet,
    build_clusters,
    daytype,
    fit_day,
    is_weekend,
    synthesize_year,
    weather_scale_factor,
    year_days,
)


def test_calendar_basics():
    assert is_weekend(date(2015, 6, 6))  # Saturday
    assert is_weekend(date(2015, 6, 7))  # Sunday
    assert not is_weekend(date(2015, 6, 8))
    assert daytype(date(2015, 6, 8)) == "weekday"
    assert daytype(date(2015, 6, 6)) == "weekend"


def test_year_days_drops_leap_day():
    days = year_days(2048)
    assert len(days) == 365
    assert date(2048, 2, 29) not in days
    assert len(year_days(2047)) == 365


def test_build_clusters_pool_counts(bundle):
    clusters = build_clusters(bundle.reference[Region.SR])
    # June 2015 has 22 weekdays and 8 weekend days
    assert len(clusters.pool(6, "weekday", 12)) == 22
    assert len(clusters.pool(6, "weekend", 12)) == 8
    total = sum(len(p) for p in clusters.pools.values())
    assert total == 365 * 24
    assert len(clusters.pools) == 576


def test_clusters_are_day_mean_normalized(bundle):
    clusters = build_clusters(bundle.reference[Region.SR])
    values = np.asarray(bundle.reference[Region.SR].values).reshape(365, 24)
    day0 = values[0] / values[0].mean()
    for h in range(24):
        assert day0[h] in clusters.pool(1, daytype(date(2015, 1, 1)), h)


def test_empty_pool_raises():
    with pytest.raises(EmptyPool):
        ClusterSet({}).pool(1, "weekday", 0)


def test_weather_scale_factor_clamped():
    assert weather_scale_factor(30.0, 30.0, 5.0) == 1.0
    assert weather_scale_factor(35.0, 30.0, 5.0) == pytest.approx(1.05)
    assert weather_scale_factor(90.0, 30.0, 5.0) == 1.1
    assert weather_scale_factor(-90.0, 30.0, 5.0) == 0.9
    with pytest.raises(ValueError):
        weather_scale_factor(30.0, 30.0, 0.0)


def test_fit_day_exact_affine():
    shape = 1.0 + 0.3 * np.sin(np.arange(24) / 24 * 2 * np.pi)
    out = fit_day(shape, energy_target=2400.0, peak_target=140.0)
    assert out.sum() == pytest.approx(2400.0, rel=1e-12)
    assert out.max() == pytest.approx(140.0, rel=1e-12)
    # affine in the shape: correlation must be exactly 1
    assert np.corrcoef(shape, out)[0, 1] == pytest.approx(1.0, abs=1e-12)


def test_fit_day_flat_cases():
    flat = np.ones(24)
    out = fit_day(flat, 240.0, 10.0)
    assert np.allclose(out, 10.0)
    with pytest.raises(InfeasibleDay):
        fit_day(flat, 240.0, 12.0)  # flat shape cannot express a peak
    with pytest.raises(InfeasibleDay):
        fit_day(np.linspace(0.5, 1.5, 24), 240.0, 9.0)  # peak < mean


def test_fit_day_negative_floor_preserves_targets():
    # sharply peaked shape forces b < 0 and negative off-peak hours
    shape = np.full(24, 0.2)
    shape[18] = 10.0
    out = fit_day(shape, energy_target=100.0, peak_target=90.0)
    assert np.all(out >= 0)
    assert out.sum() == pytest.approx(100.0, rel=1e-12)
    assert out.max() == pytest.approx(90.0, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    shape=st.lists(st.floats(0.05, 5.0), min_size=24, max_size=24),
    energy=st.floats(10.0, 1e5),
    ratio=st.floats(1.0, 5.0),
)
def test_fit_day_property(shape, energy, ratio):
    shape = np.asarray(shape)
    peak = energy / 24.0 * ratio
    try:
        out = fit_day(shape, energy, peak)
    except InfeasibleDay:
        assert shape.max() == shape.mean() and ratio > 1.0
        return
    assert np.all(out >= -1e-9)
    assert out.sum() == pytest.approx(energy, rel=1e-9)
    assert out.max() == pytest.approx(peak, rel=1e-9)


def _targets(year, energy=24000.0, pmr=1.3):
    days = year_days(year)
    e = {d: energy for d in days}
    p = {d: energy / 24.0 * pmr for d in days}
    return days, e, p


def test_synthesize_year_contract(bundle):
    clusters = build_clusters(bundle.reference[Region.SR])
    days, e, p = _targets(2050)
    hy = synthesize_year(clusters, 2050, e, p, "SR", seed=7)
    assert hy.values.shape == (8760,)
    daily = hy.values.reshape(365, 24)
    assert np.allclose(daily.sum(axis=1), 24000.0, rtol=1e-9)
    assert np.allclose(daily.max(axis=1), 1300.0, rtol=1e-9)
    assert hy.repaired_days == 0


def test_synthesize_year_repairs_infeasible(bundle):
    clusters = build_clusters(bundle.reference[Region.SR])
    days, e, p = _targets(2050)
    p[days[10]] = e[days[10]] / 24.0 * 0.5  # peak below mean load
    hy = synthesize_year(clusters, 2050, e, p, "SR", seed=7)
    assert hy.repaired_days == 1
    day = hy.values[240:264]
    assert day.max() == pytest.approx(e[days[10]] / 24.0 * 1.02, rel=1e-9)


def test_synthesize_year_deterministic(bundle):
    clusters = build_clusters(bundle.reference[Region.SR])
    _, e, p = _targets(2050)
    a = synthesize_year(clusters, 2050, e, p, "SR", seed=3)
    b = synthesize_year(clusters, 2050, e, p, "SR", seed=3)
    c = synthesize_year(clusters, 2050, e, p, "SR", seed=4)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_synthesized_shape_tracks_reference(bundle):
    # mean synthesized day should correlate strongly with the mean
    # reference day since every hour is drawn from the reference pools
    clusters = build_clusters(bundle.reference[Region.SR])
    _, e, p = _targets(2050)
    hy = synthesize_year(clusters, 2050, e, p, "SR", seed=11)
    synth_profile = hy.values.reshape(365, 24).mean(axis=0)
    ref = np.asarray(bundle.reference[Region.SR].values).reshape(365, 24)
    ref_profile = (ref / ref.mean(axis=1, keepdims=True)).mean(axis=0)
    corr = np.corrcoef(synth_profile, ref_profile)[0, 1]
    assert corr > 0.8
