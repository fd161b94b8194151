"""
Configuration settings for the hypertoric toolkit.
"""

import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Base configuration class"""

    ENV = os.getenv("HYPO_ENV", "development")
    DEBUG = os.getenv("HYPO_DEBUG", "False").lower() == "true"
    TESTING = False

    # Enumeration budgets
    ENUMERATION_BUDGET = int(os.getenv("HYPO_BUDGET", "8"))  # max n for signed-permutation enumeration
    LATTICE_SEARCH_BUDGET = int(os.getenv("HYPO_LATTICE_SEARCH_BUDGET", "200000"))
    LINKAGE_SEARCH_LIMIT = int(os.getenv("HYPO_LINKAGE_SEARCH_LIMIT", "8"))

    # Algebra construction
    MAX_DEGREE = int(os.getenv("HYPO_MAX_DEGREE", "16"))

    # Randomized suites
    SUITE_SIZE = int(os.getenv("HYPO_SUITE_SIZE", "200"))
    SUITE_MAX_N = int(os.getenv("HYPO_SUITE_MAX_N", "6"))

    # Logging Configuration
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FORMAT = os.getenv("LOG_FORMAT", "development")  # 'json' for production, 'development' for dev
    LOG_FILE = os.getenv("LOG_FILE", "logs/hypertoric.log")
    LOG_MAX_BYTES = int(os.getenv("LOG_MAX_BYTES", str(10 * 1024 * 1024)))  # 10MB
    LOG_BACKUP_COUNT = int(os.getenv("LOG_BACKUP_COUNT", "5"))
    LOG_ENABLE_CONSOLE = os.getenv("LOG_ENABLE_CONSOLE", "false").lower() == "true"

    @classmethod
    def get_budget_config(cls):
        """Get the budget settings as dictionary"""
        return {
            "enumeration_budget": cls.ENUMERATION_BUDGET,
            "lattice_search_budget": cls.LATTICE_SEARCH_BUDGET,
            "linkage_search_limit": cls.LINKAGE_SEARCH_LIMIT,
            "max_degree": cls.MAX_DEGREE,
        }

    @classmethod
    def get_logging_config(cls):
        """Get logging configuration as keyword arguments for StructuredLogger.configure"""
        return {
            "log_level": cls.LOG_LEVEL,
            "log_format": cls.LOG_FORMAT,
            "log_file": cls.LOG_FILE,
            "max_bytes": cls.LOG_MAX_BYTES,
            "backup_count": cls.LOG_BACKUP_COUNT,
            "enable_console": cls.LOG_ENABLE_CONSOLE,
        }

    @classmethod
    def validate_config(cls):
        """Validate required configuration"""
        invalid_vars = []

        for var in ["ENUMERATION_BUDGET", "LATTICE_SEARCH_BUDGET", "LINKAGE_SEARCH_LIMIT", "MAX_DEGREE"]:
            if getattr(cls, var) <= 0:
                invalid_vars.append(var)

        if invalid_vars:
            raise ValueError(f"Configuration values must be positive: {', '.join(invalid_vars)}")

        if cls.LOG_FORMAT.lower() not in ("json", "development"):
            raise ValueError(f"Unknown LOG_FORMAT '{cls.LOG_FORMAT}' (expected 'json' or 'development')")

        return True


class DevelopmentConfig(Config):
    """Development configuration"""

    DEBUG = True
    ENV = "development"


class ProductionConfig(Config):
    """Production configuration"""

    DEBUG = False
    ENV = "production"

    # Production logging defaults
    LOG_FORMAT = os.getenv("LOG_FORMAT", "json")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")


class TestingConfig(Config):
    """Testing configuration"""

    TESTING = True
    DEBUG = True
    ENV = "testing"
    LOG_LEVEL = os.getenv("LOG_LEVEL", "ERROR")
    LOG_FILE = os.getenv("TEST_LOG_FILE", "logs/test.log")
    MAX_DEGREE = int(os.getenv("HYPO_TEST_MAX_DEGREE", "12"))
    SUITE_SIZE = int(os.getenv("HYPO_TEST_SUITE_SIZE", "25"))


# Configuration mapping
config = {
    "development": DevelopmentConfig,
    "production": ProductionConfig,
    "testing": TestingConfig,
    "default": DevelopmentConfig,
}
