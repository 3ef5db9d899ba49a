"""Configuration management for the application."""

import os

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix ``KDQ_``)."""

    # Application
    app_name: str = "KirkwoodDiracBounds"
    log_level: str = "INFO"
    log_format: str = "json"

    # Randomness
    default_seed: int = 0

    # Optimizer
    restarts: int = 32
    max_iterations: int = 2000
    optimizer_tolerance: float = 1e-9
    workers: int = 1

    # Tolerance ladder
    identity_tolerance: float = 1e-10
    inequality_slack: float = 1e-6
    qubit_tolerance: float = 1e-5
    grid_tolerance: float = 1e-4
    grid_resolution: int = 400

    # Numerical thresholds
    postselection_threshold: float = 1e-14
    degenerate_threshold: float = 1e-14

    model_config = SettingsConfigDict(
        env_prefix="KDQ_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def seed_source(self) -> str:
        """Where ``default_seed`` came from: ``env`` or ``default``."""
        return "env" if "KDQ_DEFAULT_SEED" in {key.upper() for key in os.environ} else "default"


# Global settings instance
settings = Settings()
