"""
Hypertoric category O toolkit

Exact computation of the combinatorial and algebraic invariants of hypertoric
category O from integer lattice data.
"""

__version__ = "0.3.0"

from hypertoric.config.settings import Config, DevelopmentConfig  # noqa: E402
from hypertoric.utils.logging_config import get_logger, structured_logger  # noqa: E402

# Global settings installed by create_app
_settings = None


def create_app(config_class=Config):
    """Application factory: validate configuration, configure logging, install settings"""
    global _settings

    try:
        config_class.validate_config()
    except ValueError as e:
        structured_logger.configure(force=True, **Config.get_logging_config())
        logger = get_logger("config")
        logger.error("Configuration validation failed", extra={"error": str(e), "config_class": config_class.__name__})
        raise

    structured_logger.configure(force=True, **config_class.get_logging_config())
    logger = get_logger("init")

    _settings = config_class
    logger.info(
        "Hypertoric toolkit initialised",
        extra={"event": "app_init", "config_class": config_class.__name__, **config_class.get_budget_config()},
    )
    return config_class


def get_settings():
    """Get the installed settings, defaulting to the development configuration"""
    return _settings if _settings is not None else DevelopmentConfig
