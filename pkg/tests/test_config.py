"""
Tests for settings validation
"""
from pathlib import Path

import pytest
from pydantic import ValidationError

from orbitres.core.config import Settings


class TestSettings:
    def test_log_level_is_normalized(self):
        assert Settings(LOG_LEVEL="debug").LOG_LEVEL == "DEBUG"

    def test_unknown_log_level(self):
        with pytest.raises(ValidationError):
            Settings(LOG_LEVEL="chatty")

    def test_log_format(self):
        assert Settings(LOG_FORMAT="JSON").LOG_FORMAT == "json"
        with pytest.raises(ValidationError):
            Settings(LOG_FORMAT="xml")

    @pytest.mark.parametrize("name", ["GENERIC_RANK_POINTS", "RANDOM_HEIGHT", "SPARSE_THRESHOLD"])
    def test_positive_counts(self, name):
        with pytest.raises(ValidationError):
            Settings(**{name: 0})

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("EXTENDED", "true")
        monkeypatch.setenv("ORBIT9_SEED", "11")
        s = Settings()
        assert s.EXTENDED is True
        assert s.ORBIT9_SEED == 11

    def test_sampling_is_strict_by_default(self):
        assert Settings().STRICT_SAMPLING is True
        assert Settings(STRICT_SAMPLING="false").STRICT_SAMPLING is False

    def test_env_example_lists_every_tunable_setting(self):
        # Arrange
        path = Path(__file__).resolve().parents[1] / ".env.example"
        lines = [line.strip() for line in path.read_text().splitlines()]
        keys = {line.split("=", 1)[0] for line in lines if line and not line.startswith("#")}

        # Act
        fields = set(Settings.model_fields) - {"APP_NAME", "VERSION", "CATALOG_DIR"}

        # Assert
        assert keys == fields
        assert Settings(_env_file=str(path)).STRICT_SAMPLING is True
