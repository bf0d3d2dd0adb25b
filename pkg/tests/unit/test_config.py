"""Tests unitaires pour la configuration par variables d'environnement."""

import pytest

from src.exceptions import ConfigurationError
from src.utils.config import Config, get_config, reset_config


class TestConfigFromEnv:

    def test_defaults(self):
        config = Config.from_env()
        assert config.max_enum_dim == 20
        assert config.auerbach_max_cycles == 500
        assert config.jacobi_max_sweeps == 100
        assert config.test_vector_count == 500
        assert config.max_workers == 1
        assert config.log_level == "INFO"
        assert config.environment == "dev"

    def test_overrides(self, monkeypatch):
        monkeypatch.setenv("BAPFACTOR_MAX_ENUM_DIM", "12")
        monkeypatch.setenv("BAPFACTOR_MAX_WORKERS", "4")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        monkeypatch.setenv("ENVIRONMENT", "PROD")
        config = Config.from_env()
        assert config.max_enum_dim == 12
        assert config.max_workers == 4
        assert config.log_level == "DEBUG"
        assert config.environment == "prod"

    def test_conversion_error(self, monkeypatch):
        monkeypatch.setenv("BAPFACTOR_TEST_VECTORS", "beaucoup")
        with pytest.raises(ConfigurationError) as exc_info:
            Config.from_env()
        assert exc_info.value.error_code == "ENV_VAR_CONVERSION_ERROR"

    def test_to_dict(self):
        data = Config(max_enum_dim=8).to_dict()
        assert data["max_enum_dim"] == 8
        assert "environment" in data


class TestConfigValidate:

    def test_defaults_are_valid(self):
        Config().validate()

    @pytest.mark.parametrize("field,value", [
        ("max_enum_dim", 0),
        ("max_enum_dim", 31),
        ("auerbach_max_cycles", 0),
        ("jacobi_max_sweeps", -1),
        ("test_vector_count", 0),
        ("y_sample_count", 0),
        ("monotonicity_samples", 0),
        ("max_workers", 0),
        ("log_level", "VERBOSE"),
        ("environment", "staging"),
    ])
    def test_invalid_values(self, field, value):
        config = Config(**{field: value})
        with pytest.raises(ConfigurationError) as exc_info:
            config.validate()
        assert exc_info.value.error_code == "CONFIG_VALIDATION_FAILED"
        assert exc_info.value.exit_code == 2

    def test_all_errors_collected(self):
        with pytest.raises(ConfigurationError) as exc_info:
            Config(max_workers=0, environment="staging").validate()
        assert len(exc_info.value.context["validation_errors"]) == 2


class TestSharedConfig:

    def test_cached_until_reset(self, monkeypatch):
        first = get_config()
        monkeypatch.setenv("BAPFACTOR_MAX_ENUM_DIM", "10")
        assert get_config() is first
        reset_config()
        assert get_config().max_enum_dim == 10

    def test_invalid_environment_rejected(self, monkeypatch):
        monkeypatch.setenv("BAPFACTOR_JACOBI_MAX_SWEEPS", "0")
        with pytest.raises(ConfigurationError):
            get_config()
