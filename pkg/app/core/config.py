from pydantic_settings import BaseSettings
from pydantic import field_validator
import logging


def normalize_log_level(value: str) -> str:
    """
    Upper-case a logging level name.

    Raises:
        ValueError: If the name is not a logging level
    """
    level = str(value).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ValueError(f"Unknown log level: {value}")
    return level


class Settings(BaseSettings):
    # Application settings
    APP_TITLE: str = "Knot Tunnel Invariants"
    APP_DESCRIPTION: str = "Depth, giant step counts and bridge number bounds of tunnel number one knot tunnels"
    APP_VERSION: str = "0.1.0"
    API_PREFIX: str = "/api"

    # Base settings
    ENV: str = "development"
    DEBUG: bool = False

    # Logging settings
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_JSON: bool = False

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        return normalize_log_level(v)

    # Verification harness defaults
    VERIFY_MAX_LEN: int = 14
    VERIFY_MAX_PQ: int = 200

    # Table settings
    TABLE_FIELD_DEFAULT: str = "depth"

    class Config:
        env_file = ".env"
        case_sensitive = True


# Create settings instance
settings = Settings()

if settings.ENV == "production" and settings.DEBUG:
    import warnings
    warnings.warn("Debug mode is enabled in production environment")
