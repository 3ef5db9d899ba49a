"""Project setup: imports, configuration models and settings."""

import pytest
from pydantic import ValidationError


def test_imports():
    """Test that main modules can be imported."""
    from src import config, linalg, measures, models, quantum
    from src.optimizer import suprema
    from suites import base

    for module in (config, linalg, measures, models, quantum, suprema, base):
        assert module is not None


def test_models():
    """Test basic model creation and validation."""
    from src.models import OptConfig, SuiteConfig, TradeoffKind

    cfg = OptConfig(restarts=4, seed=3)
    assert cfg.max_iterations == 2000
    assert cfg.workers == 1
    with pytest.raises(ValidationError):
        OptConfig(restarts=0)
    with pytest.raises(ValidationError):
        SuiteConfig(dims=[2, 0])

    assert TradeoffKind.NRE_PRODUCT.inequality_id == "prop3"
    assert TradeoffKind.NRE_ADDITIVE.uses_commutator
    assert not TradeoffKind.DELTA_PRODUCT.uses_commutator


def test_opt_config_from_settings():
    from src.config import settings
    from src.models import OptConfig

    cfg = OptConfig.from_settings(restarts=7, tolerance=None)
    assert cfg.restarts == 7
    assert cfg.tolerance == settings.optimizer_tolerance
    assert cfg.seed == settings.default_seed


def test_suite_config_from_yaml(tmp_path):
    from src.models import SuiteConfig

    path = tmp_path / "suite.yaml"
    path.write_text("instances: 5\ndims: [2, 3]\nseed: 17\nslack: 1.0e-5\n", encoding="utf-8")
    config = SuiteConfig.from_yaml(path)
    assert config.instances == 5
    assert config.dims == [2, 3]
    assert config.effective_seed() == 17
    assert config.inequality_slack() == 1e-5
    assert config.opt_config().seed == 17
    assert config.opt_config(seed=4).seed == 4


def test_suite_config_rejects_bad_files(tmp_path):
    from src.exceptions import ReportIoError, SchemaError
    from src.models import SuiteConfig

    path = tmp_path / "suite.yaml"
    path.write_text("- just\n- a list\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="expected a mapping"):
        SuiteConfig.from_yaml(path)
    path.write_text("instances: -1\n", encoding="utf-8")
    with pytest.raises(SchemaError):
        SuiteConfig.from_yaml(path)
    path.write_text("dims: [2, 3\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="invalid YAML"):
        SuiteConfig.from_yaml(path)
    with pytest.raises(ReportIoError):
        SuiteConfig.from_yaml(tmp_path / "missing.yaml")


def test_config_loading():
    """Test configuration loading."""
    from src.config import Settings

    defaults = Settings(_env_file=None)
    assert defaults.app_name == "KirkwoodDiracBounds"
    assert defaults.identity_tolerance == 1e-10
    assert defaults.inequality_slack == 1e-6
    assert defaults.qubit_tolerance == 1e-5
    assert defaults.grid_tolerance == 1e-4
    assert defaults.grid_resolution == 400


def test_environment_overrides(monkeypatch):
    from src.config import Settings

    monkeypatch.setenv("KDQ_RESTARTS", "5")
    monkeypatch.setenv("KDQ_DEFAULT_SEED", "123")
    overridden = Settings(_env_file=None)
    assert overridden.restarts == 5
    assert overridden.default_seed == 123
    assert overridden.seed_source() == "env"

    monkeypatch.delenv("KDQ_DEFAULT_SEED")
    assert Settings(_env_file=None).seed_source() == "default"


def test_seed_resolution(monkeypatch):
    from src.main import resolve_seed

    monkeypatch.delenv("KDQ_DEFAULT_SEED", raising=False)
    assert resolve_seed(7) == (7, "cli")
    assert resolve_seed(None, 9) == (9, "config")
    assert resolve_seed(None)[1] == "default"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
