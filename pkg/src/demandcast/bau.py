"""Business-as-usual model: feature construction and ten penalized fits.

One regression per (region, target) with target in {peak, energy}: five
regions, ten problems. Features are the 33 per-city daily weather stats
for the region's catalog cities plus one GDP column (annual value held
constant within the year), standardized over the training rows.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from datetime import date

import numpy as np

from .elasticnet import ElasticNetFit, alpha_max, fit_elastic_net
from .errors import FeatureMismatch, MissingWeatherDay, ZeroVariance
from .regions import Region, WEATHER_STATS, WEATHER_VARS, feature_name

TARGETS = ("peak", "energy")


class WeatherTable:
    """(city, day) -> per-variable (min, max, avg), with day-of-year lookup."""

    def __init__(self, weather_daily):
        self._by_key = {(w.city, w.day): w.stats for w in weather_daily}
        self._days_by_year: dict[int, set] = {}
        for w in weather_daily:
            self._days_by_year.setdefault(w.day.year, set()).add(w.day)

    def years(self):
        return sorted(self._days_by_year)

    def stats(self, city: str, day: date):
        try:
            return self._by_key[(city, day)]
        except KeyError:
            raise MissingWeatherDay(city, day) from None

    def row(self, cities: list[str], day: date) -> list[float]:
        out = []
        for city in cities:
            stats = self.stats(city, day)
            for var in WEATHER_VARS:
                lo, hi, avg = stats[var]
                out.extend((lo, hi, avg))
        return out

    def mapped_day(self, source_year: int, target_day: date) -> date:
        """Same day-of-year in the source historical year (Feb 29 dropped)."""
        month, d = target_day.month, target_day.day
        if month == 2 and d == 29:
            d = 28
        return date(source_year, month, d)


def region_columns(catalog, region: Region) -> list[str]:
    cols = []
    for city in catalog.city_names(region):
        for var in WEATHER_VARS:
            for stat in WEATHER_STATS:
                cols.append(feature_name(city, var, stat))
    cols.append("GDP")
    return cols


@dataclass
class FeatureMatrix:
    dates: list[date]
    columns: list[str]          # retained columns, stable order
    X: np.ndarray               # raw values, retained columns only
    mean: np.ndarray
    std: np.ndarray
    pruned: list[str] = field(default_factory=list)

    def standardized(self) -> np.ndarray:
        return (self.X - self.mean) / self.std

    def transform(self, raw: np.ndarray, columns: list[str]) -> np.ndarray:
        if list(columns) != self.columns:
            raise FeatureMismatch("column set differs from training")
        return (raw - self.mean) / self.std


def build_features(weather: WeatherTable, gdp_by_year: dict[int, float],
                   region: Region, catalog, dates: list[date]) -> FeatureMatrix:
    """Raw rows (one per day), then standardize; zero-variance columns are
    dropped and recorded in the pruning log."""
    cities = catalog.city_names(region)
    all_cols = region_columns(catalog, region)
    rows = []
    for d in dates:
        row = weather.row(cities, d)
        row.append(gdp_by_year[d.year])
        rows.append(row)
    X = np.asarray(rows, float)
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    keep = std > 0
    pruned = [c for c, k in zip(all_cols, keep) if not k]
    cols = [c for c, k in zip(all_cols, keep) if k]
    return FeatureMatrix(list(dates), cols, X[:, keep], mean[keep], std[keep],
                         pruned=pruned)


def raw_rows(weather: WeatherTable, gdp_value: float, region: Region, catalog,
             dates: list[date], source_year: int | None = None) -> np.ndarray:
    """Raw feature rows for projection; weather optionally comes from a
    resampled historical source year aligned by day-of-year."""
    cities = catalog.city_names(region)
    rows = []
    for d in dates:
        src = d if source_year is None else weather.mapped_day(source_year, d)
        row = weather.row(cities, src)
        row.append(gdp_value)
        rows.append(row)
    return np.asarray(rows, float)


def prune_like(raw: np.ndarray, all_columns: list[str], fm: FeatureMatrix) -> np.ndarray:
    keep = [i for i, c in enumerate(all_columns) if c in set(fm.columns)]
    cols = [all_columns[i] for i in keep]
    if cols != fm.columns:
        raise FeatureMismatch("column set differs from training")
    return raw[:, keep]


@dataclass
class PenalizedLinearModel:
    region: Region
    target: str
    fit: ElasticNetFit
    features: FeatureMatrix     # carries standardization metadata
    train_r2: float = float("nan")
    val_r2: float = float("nan")
    min_historical: float = 0.0

    @property
    def alpha(self) -> float:
        return self.fit.alpha

    @property
    def l1_ratio(self) -> float:
        return self.fit.l1_ratio

    def predict_raw(self, raw: np.ndarray, columns: list[str]) -> np.ndarray:
        return self.fit.predict(self.features.transform(raw, columns))

    def manifest(self) -> dict:
        return {
            "region": self.region.value,
            "target": self.target,
            "alpha": self.fit.alpha,
            "l1_ratio": self.fit.l1_ratio,
            "intercept": self.fit.intercept,
            "columns": self.features.columns,
            "coefficients": [float(b) for b in self.fit.coef],
            "pruned_columns": self.features.pruned,
            "train_r2": self.train_r2,
            "validation_r2": self.val_r2,
        }


def r_squared(pred, actual) -> float:
    pred = np.asarray(pred, float)
    actual = np.asarray(actual, float)
    if len(pred) != len(actual) or len(actual) < 2:
        raise ValueError("need equal lengths >= 2")
    sst = float(np.sum((actual - actual.mean()) ** 2))
    if sst == 0.0:
        raise ZeroVariance("actual series is constant")
    return 1.0 - float(np.sum((actual - pred) ** 2)) / sst


def alpha_grid(Xs: np.ndarray, y: np.ndarray, l1_ratio: float,
               size: int = 30, min_ratio: float = 1e-4) -> np.ndarray:
    amax = alpha_max(Xs, y, l1_ratio)
    if amax <= 0:
        return np.array([0.0])
    return np.geomspace(min_ratio * amax, amax, size)


def select_alpha(fm: FeatureMatrix, y: np.ndarray, validation_year: int,
                 l1_ratio: float, grid: np.ndarray | None = None,
                 max_sweeps: int = 10_000, tol: float = 1e-8):
    """Pick alpha minimizing validation-year RMSE (train on the earlier
    years), then refit on the full set. RMSE ties within 1e-12 go to the
    larger alpha (stronger regularization)."""
    years = np.array([d.year for d in fm.dates])
    train_mask = years < validation_year
    val_mask = years == validation_year
    Xs = fm.standardized()
    if grid is None:
        grid = alpha_grid(Xs[train_mask], y[train_mask], l1_ratio)
    grid = np.sort(np.asarray(grid, float))[::-1]  # path: strong -> weak, warm starts

    best_alpha, best_rmse = None, np.inf
    warm = None
    for alpha in grid:
        f = fit_elastic_net(Xs[train_mask], y[train_mask], alpha, l1_ratio,
                            max_sweeps=max_sweeps, tol=tol, warm_start=warm)
        warm = f.coef
        resid = y[val_mask] - f.predict(Xs[val_mask])
        rmse = float(np.sqrt(np.mean(resid ** 2)))
        if rmse < best_rmse - 1e-12:
            best_alpha, best_rmse = alpha, rmse
        elif abs(rmse - best_rmse) <= 1e-12 and (best_alpha is None or alpha > best_alpha):
            best_alpha = alpha
    full = fit_elastic_net(Xs, y, best_alpha, l1_ratio,
                           max_sweeps=max_sweeps, tol=tol)
    return best_alpha, full


@dataclass
class DailySeries:
    region: Region
    target: str
    dates: list[date]
    values: np.ndarray

    def by_date(self) -> dict[date, float]:
        return dict(zip(self.dates, self.values))


def project_daily(model: PenalizedLinearModel, raw_future: np.ndarray,
                  all_columns: list[str], dates: list[date]) -> DailySeries:
    """Predict daily values; negative predictions are clamped to the
    minimum historical value with a warning."""
    raw = prune_like(raw_future, all_columns, model.features)
    pred = model.fit.predict(model.features.transform(raw, model.features.columns))
    n_neg = int(np.sum(pred <= 0))
    if n_neg:
        warnings.warn(
            f"{model.region.value}/{model.target}: {n_neg} nonpositive "
            f"predictions clamped to {model.min_historical}",
            stacklevel=2,
        )
        pred = np.where(pred <= 0, model.min_historical, pred)
    return DailySeries(model.region, model.target, list(dates), pred)
