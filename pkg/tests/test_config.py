import json

import numpy as np
import pytest

from dmcast.config import ConfigError, default_config, load_config, parse_config


def test_default_config_matches_reference_setup():
    cfg = default_config()
    assert cfg.array.n_antennas == 16
    assert cfg.array.spacing_wavelengths == 0.5
    assert cfg.layout.desired_angles == ((30.0, 45.0), (120.0, 135.0))
    assert cfg.layout.n_eavesdroppers == 2
    assert cfg.beta1_sq == 0.9
    assert cfg.snr_db == 14.0
    assert cfg.schemes == ("max-grp-nsp", "leakage", "bd")
    assert cfg.trials == 200_000
    assert cfg.sweep_angles().size == 361


def test_sweep_grid_endpoints():
    cfg = default_config()
    angles = cfg.sweep_angles()
    assert angles[0] == 0.0
    assert angles[-1] == 180.0
    assert abs(angles[1] - angles[0] - 0.5) < 1e-12


def test_explicit_angle_list():
    cfg = parse_config({"sweep": {"angles_deg": [30.0, 45.0, 120.0, 135.0]}})
    np.testing.assert_array_equal(cfg.sweep_angles(), [30.0, 45.0, 120.0, 135.0])


def test_profile_uses_snr():
    cfg = default_config()
    p = cfg.profile(10.0)
    assert abs(p.sigma_d2 - 0.1) < 1e-15
    assert abs(cfg.profile().sigma_d2 - 10 ** (-1.4)) < 1e-15


def test_config_roundtrip_through_json(tmp_path):
    cfg = default_config()
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg.to_json_dict()))
    again = load_config(str(path))
    assert again == cfg


def test_field_paths_in_errors():
    with pytest.raises(ConfigError) as err:
        parse_config({"trials": 100})
    assert err.value.field == "trials"
    with pytest.raises(ConfigError) as err:
        parse_config({"power": {"beta1_sq": 1.5}})
    assert err.value.field == "power.beta1_sq"
    with pytest.raises(ConfigError) as err:
        parse_config({"layout": {"desired_groups_deg": [[30.0, 200.0]], "eavesdroppers_deg": [90.0]}})
    assert err.value.field == "layout.desired_groups_deg[0][1]"
    with pytest.raises(ConfigError) as err:
        parse_config({"schemes": ["zf"]})
    assert err.value.field == "schemes[0]"
    with pytest.raises(ConfigError) as err:
        parse_config({"unknown_top": 1})
    assert err.value.field == "unknown_top"


def test_layout_capacity_check():
    with pytest.raises(ConfigError) as err:
        parse_config({
            "array": {"n_antennas": 4},
            "layout": {"desired_groups_deg": [[30.0, 45.0], [120.0, 135.0]],
                       "eavesdroppers_deg": [90.0]},
        })
    assert "n_antennas" in str(err.value)


def test_bad_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(path))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))


def test_seed_override():
    cfg = default_config().with_seed(42)
    assert cfg.seed == 42
    with pytest.raises(ConfigError):
        parse_config({"seed": -1})
