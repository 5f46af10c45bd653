"""
Application settings and configuration module.
Loads environment variables and provides solver and reporting configuration.
"""
import logging

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings class.
    Loads settings from environment variables and provides default values.
    """
    # Project settings
    PROJECT_NAME: str = "Partial List Coloring Bounds"
    VERSION: str = "1.0.0"

    # Analytic engine
    ROOT_TOL: float = Field(default=1e-12, gt=0)
    ROOT_MAX_ITER: int = Field(default=200, ge=1)

    # Exact solvers
    NODE_BUDGET: int = Field(default=100_000_000, ge=1)

    # Theorem engine
    GUARANTEE_SLACK: float = Field(default=1e-6, ge=0)
    DEFAULT_SEED: int = Field(default=0)

    # Grid scans
    MAX_WORKERS: int = Field(default=1, ge=1)

    # Logging
    LOG_LEVEL: str = Field(default="INFO")

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        allowed_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in allowed_levels:
            return "INFO"
        return v.upper()

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Initialize settings
settings = Settings()

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
