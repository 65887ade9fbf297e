from datetime import date

import numpy as np
import pytest

from demandcast import bau
from demandcast.errors import FeatureMismatch, MissingWeatherDay
from demandcast.regions import Region


@pytest.fixture(scope="module")
def weather_table(bundle):
    return bau.WeatherTable(bundle.weather)


def _training_dates():
    return [date(2015, 1, 1 + i) for i in range(20)]


def test_feature_count_southern(weather_table, catalog, bundle):
    gdp = {2015: 1e12}
    fm = bau.build_features(weather_table, gdp, Region.SR, catalog, _training_dates())
    # 7 cities x 33 + GDP = 232 before pruning; the constant GDP column gets
    # pruned on a single-year window
    assert len(fm.columns) + len(fm.pruned) == 7 * 33 + 1
    assert "GDP" in fm.pruned


def test_standardized_columns_zero_mean(weather_table, catalog):
    gdp = {2015: 1e12}
    fm = bau.build_features(weather_table, gdp, Region.NER, catalog, _training_dates())
    Xs = fm.standardized()
    assert np.max(np.abs(Xs.mean(axis=0))) < 1e-12
    assert np.allclose(Xs.std(axis=0), 1.0)


def test_missing_weather_day(weather_table, catalog):
    with pytest.raises(MissingWeatherDay):
        bau.build_features(weather_table, {2013: 1.0}, Region.SR, catalog,
                           [date(2013, 1, 1)])


def test_select_alpha_zero_on_noiseless_linear():
    rng = np.random.default_rng(0)
    dates = [date(2018, 1, 1 + (i % 28)) if i < 330 else date(2019, 1, 1 + (i - 330))
             for i in range(360)]
    raw = rng.normal(size=(360, 2))
    fm = bau.FeatureMatrix(dates, ["a", "b"], raw,
                           raw.mean(axis=0), raw.std(axis=0))
    y = 3.0 * fm.standardized()[:, 0] + 10.0
    alpha, fit = bau.select_alpha(fm, y, 2019, 0.9, grid=np.array([0.0]))
    assert alpha == 0.0
    assert abs(fit.coef[0] - 3.0) < 1e-8


def test_select_alpha_prefers_smaller_when_validation_worsens():
    rng = np.random.default_rng(1)
    n = 400
    dates = ([date(2018, 1 + i // 28, 1 + i % 28) for i in range(300)]
             + [date(2019, 1 + i // 28, 1 + i % 28) for i in range(100)])
    raw = rng.normal(size=(n, 3))
    fm = bau.FeatureMatrix(dates, ["a", "b", "c"], raw, raw.mean(axis=0), raw.std(axis=0))
    y = 5.0 * fm.standardized()[:, 1] + 2.0
    alpha, _ = bau.select_alpha(fm, y, 2019, 0.9, grid=np.array([1e-6, 10.0]))
    assert alpha == 1e-6


def test_select_alpha_tiebreak_larger():
    # y depends on no feature: every alpha fully shrinks, RMSE ties exactly,
    # so the documented tiebreak picks the stronger regularization
    dates = ([date(2018, 1, 1 + i) for i in range(20)]
             + [date(2019, 1, 1 + i) for i in range(10)])
    raw = np.linspace(-1, 1, 30).reshape(-1, 1)
    fm = bau.FeatureMatrix(dates, ["a"], raw, raw.mean(axis=0), raw.std(axis=0))
    y = np.full(30, 4.0)
    alpha, fit = bau.select_alpha(fm, y, 2019, 0.9, grid=np.array([5.0, 50.0]))
    assert alpha == 50.0
    assert np.all(fit.coef == 0.0)


def test_project_daily_reproduces_training_point(weather_table, catalog, bundle,
                                                 pipeline):
    # alpha=0 perfect fit on a deterministic linear target
    dates = _training_dates()
    gdp = {2015: 1e12}
    fm = bau.build_features(weather_table, gdp, Region.ER, catalog, dates)
    Xs = fm.standardized()
    y = 100.0 + 3.0 * Xs[:, 0]
    from demandcast.elasticnet import fit_elastic_net
    fit = fit_elastic_net(Xs, y, 0.0, 0.9)
    model = bau.PenalizedLinearModel(Region.ER, "energy", fit, fm, min_historical=1.0)
    all_cols = bau.region_columns(catalog, Region.ER)
    raw = bau.raw_rows(weather_table, 1e12, Region.ER, catalog, dates)
    series = bau.project_daily(model, raw, all_cols, dates)
    assert np.allclose(series.values, y, atol=1e-8)


def test_project_daily_gdp_monotonicity(pipeline, catalog):
    # prediction responds linearly to the GDP column
    model = pipeline.models[(Region.SR, "energy")]
    gdp_idx = model.features.columns.index("GDP")
    weather = pipeline.weather
    dates = [date(2016, 6, 1 + i) for i in range(10)]
    all_cols = bau.region_columns(catalog, Region.SR)
    raw1 = bau.raw_rows(weather, 1e12, Region.SR, catalog, dates)
    raw2 = bau.raw_rows(weather, 2e12, Region.SR, catalog, dates)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s1 = bau.project_daily(model, raw1, all_cols, dates)
        s2 = bau.project_daily(model, raw2, all_cols, dates)
    coef = model.fit.coef[gdp_idx]
    if coef > 0:
        assert np.all(s2.values >= s1.values)


def test_project_daily_feature_mismatch(pipeline, catalog):
    model = pipeline.models[(Region.SR, "energy")]
    dates = [date(2016, 6, 1)]
    raw = bau.raw_rows(pipeline.weather, 1e12, Region.SR, catalog, dates)
    wrong_cols = bau.region_columns(catalog, Region.NR)
    with pytest.raises(FeatureMismatch):
        bau.project_daily(model, raw[:, : len(wrong_cols)], wrong_cols, dates)


def test_ten_models_fitted(pipeline):
    assert len(pipeline.models) == 10
    for (region, target), model in pipeline.models.items():
        assert model.l1_ratio == 0.9
        assert len(model.fit.coef) == len(model.features.columns)


def test_model_manifest_deterministic(pipeline):
    import json
    blob1 = json.dumps([pipeline.models[k].manifest() for k in sorted(
        pipeline.models, key=lambda k: (k[0].value, k[1]))], sort_keys=True)
    blob2 = json.dumps([pipeline.models[k].manifest() for k in sorted(
        pipeline.models, key=lambda k: (k[0].value, k[1]))], sort_keys=True)
    assert blob1 == blob2
