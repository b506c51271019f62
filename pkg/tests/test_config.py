import json

import pytest

from tentspace.config import Config, load_config


def test_defaults():
    cfg = Config()
    assert cfg.degree == 64 and cfg.probe_radii == (0.3, 0.5, 0.8)
    assert cfg.cross_check_tol == 1e-6


@pytest.mark.parametrize(
    "kwargs",
    [{"degree": 4}, {"grid_depth": 2}, {"probe_radii": (0.5, 1.0)}, {"cross_check_tol": 0}, {"seed": -1}, {"radial_order": 0}],
)
def test_validation(kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs)


def test_overrides_skip_none():
    cfg = Config().with_overrides(degree=100, seed=None)
    assert cfg.degree == 100 and cfg.seed == Config().seed


def test_file_then_env(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"degree": 80, "grid_depth": 6}))
    cfg = load_config(path, env={"TENTSPACE_GRID_DEPTH": "7", "TENTSPACE_PROBE_RADII": "0.2,0.4"})
    assert cfg.degree == 80 and cfg.grid_depth == 7 and cfg.probe_radii == (0.2, 0.4)


def test_env_only():
    assert load_config(env={"TENTSPACE_CROSS_CHECK_TOL": "1e-8"}).cross_check_tol == 1e-8


def test_unknown_key(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError, match="bogus"):
        load_config(path, env={})


def test_non_object(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_config(path, env={})


def test_round_trip():
    cfg = Config(degree=99)
    assert Config(**cfg.to_dict()) == cfg
    json.dumps(cfg.to_dict())
