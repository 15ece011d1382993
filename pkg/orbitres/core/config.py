"""
Configuration management for orbitres
"""
from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from orbitres import __version__


PACKAGE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Engine settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore"
    )

    # Application
    APP_NAME: str = "orbitres"
    VERSION: str = __version__

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "console"

    # Catalog
    CATALOG_DIR: str = str(PACKAGE_DIR / "catalog" / "data")

    # Generic rank sampling
    RANDOM_SEED: int = 20170605
    GENERIC_RANK_POINTS: int = 5
    RANDOM_HEIGHT: int = 97
    SYMBOLIC_RANK_LIMIT: int = 16
    STRICT_SAMPLING: bool = True

    # Linear algebra
    SPARSE_THRESHOLD: int = 200

    # (F4, alpha2) orbit 9 representative
    ORBIT9_SEED: int = 7

    # Unbounded loops
    MAX_DEGREE_STEPS: int = 64

    # Computations above desk scale
    EXTENDED: bool = False

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v):
        v = v.upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR"}:
            raise ValueError("LOG_LEVEL must be one of DEBUG, INFO, WARNING, ERROR")
        return v

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v):
        v = v.lower()
        if v not in {"console", "json"}:
            raise ValueError("LOG_FORMAT must be 'console' or 'json'")
        return v

    @field_validator("GENERIC_RANK_POINTS", "RANDOM_HEIGHT", "SPARSE_THRESHOLD")
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError("value must be positive")
        return v


settings = Settings()


def get_settings() -> Settings:
    return settings


def catalog_dir(override: Optional[str] = None) -> Path:
    """Directory holding the case data files"""
    return Path(override or settings.CATALOG_DIR)
