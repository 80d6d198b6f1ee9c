"""
Tests for the layered configuration reader
"""

import pytest

from src.utils.config_reader import ConfigReader, get_config


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "default.toml").write_text(
        '[coxeter]\norder_cap = 1000\ngroup_cap = 20000\n\n[pipeline]\ndeterministic = true\n'
    )
    (tmp_path / "ci.toml").write_text("[coxeter]\norder_cap = 50\n")
    return tmp_path


def test_environment_file_merges_over_default(config_dir):
    reader = ConfigReader(config_dir=config_dir, env="ci").read_config()
    assert reader.get_int("coxeter.order_cap", 1) == 50
    assert reader.get_int("coxeter.group_cap", 1) == 20000
    assert reader.section("coxeter") == {"order_cap": 50, "group_cap": 20000}


def test_missing_keys_fall_back(config_dir):
    reader = ConfigReader(config_dir=config_dir, env="nowhere").read_config()
    assert reader.get("coxeter.order_cap") == 1000
    assert reader.get("algebra.max_field_lcm", 420) == 420
    assert reader.section("algebra") == {}


def test_environment_variables_override(config_dir, monkeypatch):
    monkeypatch.setenv("COXETER_ORDER_CAP", "77")
    monkeypatch.setenv("PIPELINE_DETERMINISTIC", "off")
    reader = ConfigReader(config_dir=config_dir, env="ci").read_config()
    assert reader.get_int("coxeter.order_cap", 1) == 77
    assert reader.get_bool("pipeline.deterministic", True) is False


def test_bad_values_raise(config_dir, monkeypatch):
    reader = ConfigReader(config_dir=config_dir, env="ci").read_config()
    monkeypatch.setenv("COXETER_GROUP_CAP", "lots")
    with pytest.raises(ValueError):
        reader.get_int("coxeter.group_cap", 1)
    monkeypatch.setenv("COXETER_GROUP_CAP", "0")
    with pytest.raises(ValueError):
        reader.get_int("coxeter.group_cap", 1)
    monkeypatch.setenv("PIPELINE_DETERMINISTIC", "maybe")
    with pytest.raises(ValueError):
        reader.get_bool("pipeline.deterministic", True)


def test_test_environment_is_active():
    config = get_config()
    assert config.env == "test"
    assert config.get("logging.level") == "WARNING"
    assert config.get_int("coxeter.order_cap", 1) == 1000
