import json

import numpy as np
import pytest

from regretlab import (ConfigError, apply_overrides, build_config,
                       load_config)


def test_defaults_load():
    cfg = load_config(None)
    assert cfg.state_space.cells == 2
    assert cfg.method == "exact"
    assert cfg.draws == 20000
    assert cfg.workers == 1
    assert len(cfg.designs) == 6
    assert cfg.designs[0].sizes == (10, 10)
    assert cfg.grid_resolution == (50, 50)
    assert cfg.normalized_welfare().u_b0 == 0.6


def test_default_weight_grid_is_decimal_exact():
    cfg = load_config(None)
    vals = cfg.weight_values()
    assert len(vals) == 501
    assert vals[0] == 0.5
    assert vals[-1] == 1.0
    # grid points must equal the decimal literals they stand for
    assert vals[251] == 0.751
    assert vals[363] == 0.863
    assert np.all(np.diff(vals) > 0)


def test_weight_grid_nondecimal_step_falls_back():
    cfg = build_config({"weight_grid": {"start": 0.5, "stop": 1.0,
                                        "step": 0.07}})
    vals = cfg.weight_values()
    assert len(vals) == 8
    assert vals[0] == 0.5
    assert vals[-1] <= 1.0


def test_unknown_top_level_key_rejected():
    with pytest.raises(ConfigError):
        build_config({"wight_grid": {"start": 0.5}})


def test_unknown_nested_keys_rejected():
    with pytest.raises(ConfigError):
        build_config({"state_space": {"lower": [0.2, 0.0],
                                      "upper": [0.6, 1.0],
                                      "variance": []}})
    with pytest.raises(ConfigError):
        build_config({"weight_grid": {"start": 0.5, "stop": 1.0,
                                      "step": 0.001, "count": 10}})
    with pytest.raises(ConfigError):
        build_config({"mmr_search": {"designs": [10, 10]}})
    with pytest.raises(ConfigError):
        build_config({"state_space": {
            "lower": [0.2, 0.0], "upper": [0.6, 1.0],
            "variation": [{"cell": 1, "ref": 0, "lambda_minus": -0.1,
                           "lambda_plus": 0.1, "shape": "band"}]}})


def test_welfare_forms():
    cfg = build_config({"welfare": {"u_b": 0.5}})
    assert cfg.normalized_welfare().u_b0 == 0.5
    cfg = build_config({"welfare": {"u_a0": 0.9, "u_a1": 0.2,
                                    "u_b0": 0.4, "u_b1": 0.8}})
    assert not cfg.welfare.is_normalized_neutralizing
    with pytest.raises(ConfigError):
        build_config({"welfare": {"u_b": 0.6, "u_a0": 1.0}})
    with pytest.raises(ConfigError):
        build_config({"welfare": {"u_a0": 1.0, "u_a1": 0.0}})
    with pytest.raises(ConfigError):
        build_config({"welfare": {"u_b": 0.0}})


def test_design_validation():
    with pytest.raises(ConfigError):
        build_config({"designs": []})
    with pytest.raises(ConfigError):
        build_config({"designs": [[10]]})
    with pytest.raises(ConfigError):
        build_config({"designs": [[10, -1]]})
    with pytest.raises(ConfigError):
        build_config({"designs": [[10, 10.5]]})


def test_scalar_field_validation():
    with pytest.raises(ConfigError):
        build_config({"method": "bootstrap"})
    with pytest.raises(ConfigError):
        build_config({"draws": 0})
    with pytest.raises(ConfigError):
        build_config({"workers": 0})
    with pytest.raises(ConfigError):
        build_config({"seed": -1})
    with pytest.raises(ConfigError):
        build_config({"seed": 1.5})
    with pytest.raises(ConfigError):
        build_config({"grid_resolution": [50]})
    with pytest.raises(ConfigError):
        build_config({"grid_resolution": [50, 1]})
    with pytest.raises(ConfigError):
        build_config({"weight_grid": {"start": 0.8, "stop": 0.6,
                                      "step": 0.01}})
    with pytest.raises(ConfigError):
        build_config({"weight_grid": {"start": 0.5, "stop": 1.0,
                                      "step": 0.0}})


def test_hash_ignores_workers_and_output_dir():
    a = build_config({})
    b = build_config({"workers": 8, "output_dir": "elsewhere"})
    assert a.config_hash() == b.config_hash()
    c = build_config({"seed": 4242})
    assert c.config_hash() != a.config_hash()


def test_hash_sensitive_to_sections():
    a = build_config({})
    b = build_config({"max_regret": {"w0": 0.75}})
    assert a.config_hash() != b.config_hash()


def test_load_from_file(tmp_path):
    path = tmp_path / "exp.json"
    path.write_text(json.dumps({"designs": [[4, 4]], "draws": 100}))
    cfg = load_config(str(path))
    assert cfg.designs[0].sizes == (4, 4)
    assert cfg.draws == 100


def test_load_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/exp.json")


def test_load_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{designs: oops")
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_overrides_revalidate():
    cfg = load_config(None)
    out = apply_overrides(cfg, seed=7, workers=4, method="mc", draws=500,
                          output_dir="x")
    assert out.seed == 7
    assert out.workers == 4
    assert out.method == "mc"
    assert out.draws == 500
    assert out.output_dir == "x"
    # sections must survive the round trip
    cfg2 = build_config({"criteria": {"criterion": "minimax"}})
    out2 = apply_overrides(cfg2, seed=9)
    assert out2.sections["criteria"] == {"criterion": "minimax"}
    with pytest.raises(ConfigError):
        apply_overrides(cfg, method="bogus")


def test_state_space_config_errors():
    with pytest.raises(ConfigError):
        build_config({"state_space": {"lower": [0.2], "upper": [0.6, 1.0]}})
    with pytest.raises(ConfigError):
        build_config({"state_space": {"lower": [0.8, 0.0],
                                      "upper": [0.6, 1.0]}})
