import csv
from datetime import date

import pytest

from demandcast import errors
from demandcast.ingest import (
    aggregate_weather_daily,
    load_daily_demand,
    load_profiles,
    load_reference_year,
    validate_bundle,
)
from demandcast.regions import Region, WEATHER_VARS


def _write(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


DEMAND_HEADER = ["date", "region", "peak_mw", "energy_mwh"]


def test_daily_demand_parse(tmp_path):
    p = tmp_path / "d.csv"
    _write(p, DEMAND_HEADER, [["2015-06-01", "SR", "35000", "720000"]])
    recs = load_daily_demand(p)
    assert recs[0].region is Region.SR
    assert recs[0].peak_mw == 35000
    assert recs[0].energy_mwh == 720000


def test_daily_demand_mean_exceeds_peak(tmp_path):
    p = tmp_path / "d.csv"
    # 900000/24 = 37500 > 35000
    _write(p, DEMAND_HEADER, [["2015-06-01", "SR", "35000", "900000"]])
    with pytest.raises(errors.MeanExceedsPeak):
        load_daily_demand(p)


def test_daily_demand_empty_file(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("")
    with pytest.raises(errors.MissingColumn):
        load_daily_demand(p)


def test_daily_demand_duplicate_and_nonpositive(tmp_path):
    p = tmp_path / "d.csv"
    _write(p, DEMAND_HEADER, [
        ["2015-06-01", "SR", "35000", "720000"],
        ["2015-06-01", "SR", "34000", "700000"],
    ])
    with pytest.raises(errors.DuplicateDay):
        load_daily_demand(p)
    _write(p, DEMAND_HEADER, [["2015-06-01", "SR", "-1", "720000"]])
    with pytest.raises(errors.NonPositiveValue):
        load_daily_demand(p)


def _samples(city, day, temps):
    out = []
    for h, t in enumerate(temps):
        s = {"city": city, "day": day}
        for v in WEATHER_VARS:
            s[v] = t if v in ("t2m", "t10m") else 1.0
        out.append(s)
    return out


def test_aggregate_constant_day():
    daily = aggregate_weather_daily(_samples("Delhi", date(2015, 1, 1), [300.0] * 24))
    assert daily[0].stats["t2m"] == (300.0, 300.0, 300.0)


def test_aggregate_min_max_mean():
    temps = [290.0] * 12 + [310.0] * 12
    daily = aggregate_weather_daily(_samples("Delhi", date(2015, 1, 1), temps))
    assert daily[0].stats["t2m"] == (290.0, 310.0, 300.0)


def test_aggregate_incomplete_day():
    with pytest.raises(errors.IncompleteDay):
        aggregate_weather_daily(_samples("Delhi", date(2015, 1, 1), [300.0] * 10))


def test_aggregate_invariant_min_avg_max(bundle):
    for w in bundle.weather[:500]:
        for lo, hi, avg in w.stats.values():
            assert lo <= avg <= hi


def _ref_rows(region, n, value=100.0):
    rows = []
    for i in range(n):
        rows.append([region, f"2015-01-01T00:00:00", f"{value}"])
    return rows


def test_reference_year_row_count(tmp_path):
    p = tmp_path / "ref.csv"
    _write(p, ["region", "timestamp", "mw"], _ref_rows("SR", 8784))
    with pytest.raises(errors.WrongRowCount):
        load_reference_year(p)


def test_reference_year_nonpositive(tmp_path):
    p = tmp_path / "ref.csv"
    rows = _ref_rows("SR", 8760)
    rows[4000][2] = "0"
    _write(p, ["region", "timestamp", "mw"], rows)
    with pytest.raises(errors.NonPositiveValue):
        load_reference_year(p)


def test_reference_year_accepts_valid(bundle):
    for region, ref in bundle.reference.items():
        assert len(ref.values) == 8760
        assert (ref.values > 0).all()


def test_profiles_normalized(bundle):
    for p in bundle.profiles:
        assert len(p.weights) == 24
        assert abs(p.weights.sum() - 1.0) < 1e-9


def test_round_trip_demand(cfg, tmp_path, bundle):
    p = tmp_path / "demand.csv"
    _write(p, DEMAND_HEADER, [
        [r.day.isoformat(), r.region.value, repr(r.peak_mw), repr(r.energy_mwh)]
        for r in bundle.demand
    ])
    again = load_daily_demand(p)
    assert again == bundle.demand


def test_validate_bundle_ok(cfg, catalog):
    report = validate_bundle(cfg, catalog)
    assert report.ok, report.issues


def test_validate_bundle_flags_missing_region(cfg, catalog, tmp_path):
    import shutil
    from demandcast.config import load_config
    root = tmp_path / "broken"
    shutil.copytree(cfg.inputs.root, root)
    src = root / "demand_daily.csv"
    lines = src.read_text().splitlines()
    src.write_text("\n".join(
        [lines[0]] + [ln for ln in lines[1:] if ",NER," not in ln]) + "\n")
    broken = load_config(root / "config.json")
    broken.inputs.root = str(root)
    report = validate_bundle(broken, catalog)
    assert not report.ok
    assert any("NER" in issue for issue in report.issues)


def test_validate_bundle_flags_missing_weather_variable(cfg, catalog, tmp_path):
    import shutil
    from demandcast.config import load_config
    root = tmp_path / "broken_wx"
    shutil.copytree(cfg.inputs.root, root)
    src = root / "weather_daily.csv"
    with src.open() as fh:
        rows = list(csv.reader(fh))
    drop = [i for i, c in enumerate(rows[0]) if c.startswith("tqv")]
    keep = [i for i in range(len(rows[0])) if i not in drop]
    with src.open("w", newline="") as fh:
        w = csv.writer(fh)
        for row in rows:
            w.writerow([row[i] for i in keep])
    broken = load_config(root / "config.json")
    broken.inputs.root = str(root)
    report = validate_bundle(broken, catalog)
    assert not report.ok
