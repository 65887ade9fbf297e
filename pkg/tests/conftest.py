import warnings

import pytest

from demandcast.config import load_config
from demandcast.fixtures import write_fixtures
from demandcast.regions import CityCatalog
from demandcast.runner import Pipeline, run_matrix


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    write_fixtures(out, seed=42)
    return out


@pytest.fixture(scope="session")
def cfg(fixture_dir):
    return load_config(fixture_dir / "config.json")


@pytest.fixture(scope="session")
def catalog():
    return CityCatalog()


@pytest.fixture(scope="session")
def pipeline(cfg):
    pl = Pipeline(cfg)
    pl.fit_bau()
    return pl


@pytest.fixture(scope="session")
def bundle(pipeline):
    return pipeline.bundle


@pytest.fixture(scope="session")
def full_run(cfg, pipeline, tmp_path_factory):
    out = tmp_path_factory.mktemp("run_full")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = run_matrix(cfg, out, pipeline=pipeline, keep_tables=True)
    return result
