"""
Structured logging configuration for the hypertoric toolkit.

This module provides the logging setup shared by the services and the CLI:
- JSON formatted logs for production
- Human-readable logs for development
- Per-command correlation IDs
- Log rotation and different log levels
"""

import contextvars
import logging
import logging.handlers
import os
import sys
import uuid
from contextlib import contextmanager
from datetime import datetime, timezone
from logging import Logger
from typing import Any, Dict, Iterator, Optional

try:
    import structlog

    STRUCTLOG_AVAILABLE = True
except ImportError:
    STRUCTLOG_AVAILABLE = False

try:
    from pythonjsonlogger import jsonlogger

    JSONLOGGER_AVAILABLE = True
    _JSONBase: Any = jsonlogger.JsonFormatter
except ImportError:
    JSONLOGGER_AVAILABLE = False
    _JSONBase = logging.Formatter

from hypertoric import __version__

_run_context: contextvars.ContextVar[Dict[str, str]] = contextvars.ContextVar("hypertoric_run_context", default={})


class RunContextFilter(logging.Filter):
    """Add run context information (correlation id, command) to log records."""

    def filter(self, record):
        context = _run_context.get()
        record.correlation_id = context.get("correlation_id", "no-run")
        record.command = context.get("command", "library")
        return True


class CustomJSONFormatter(_JSONBase):
    """JSON formatter with service metadata."""

    def add_fields(self, log_record, record, message_dict):
        super().add_fields(log_record, record, message_dict)
        log_record.setdefault("timestamp", datetime.now(timezone.utc).isoformat())
        log_record["level"] = record.levelname.upper()
        log_record["name"] = record.name
        log_record["service"] = "hypertoric"
        log_record["version"] = __version__

    def format(self, record):
        if JSONLOGGER_AVAILABLE:
            return super().format(record)
        # Plain fallback keeps the message and run context on one line
        return (
            f'{{"level": "{record.levelname}", "name": "{record.name}", '
            f'"correlation_id": "{getattr(record, "correlation_id", "no-run")}", "message": "{record.getMessage()}"}}'
        )


class ColoredFormatter(logging.Formatter):
    """Colored formatter for development console output."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
        "RESET": "\033[0m",
    }

    def format(self, record):
        level_color = self.COLORS.get(record.levelname, self.COLORS["RESET"])
        reset_color = self.COLORS["RESET"]
        formatted = super().format(record)
        return formatted.replace(record.levelname, f"{level_color}{record.levelname}{reset_color}")


class StructuredLogger:
    """Main structured logger class."""

    def __init__(self, name: str = "hypertoric"):
        self.name = name
        self.logger: Optional[Logger] = None
        self._configured = False

    def configure(self, force: bool = False, **kwargs):
        """Configure the structured logger.

        Args:
            force: Reconfigure even when already configured (used by create_app)
            **kwargs: log_level, log_format, log_file, max_bytes, backup_count, enable_console

        Returns:
            The configured package logger
        """
        if self._configured and not force:
            return self.logger

        log_level = kwargs.get("log_level", os.getenv("LOG_LEVEL", "INFO"))
        log_format = kwargs.get("log_format", os.getenv("LOG_FORMAT", "development"))
        log_file = kwargs.get("log_file", os.getenv("LOG_FILE", "logs/hypertoric.log"))
        max_bytes = kwargs.get("max_bytes", int(os.getenv("LOG_MAX_BYTES", "10485760")))
        backup_count = kwargs.get("backup_count", int(os.getenv("LOG_BACKUP_COUNT", "5")))
        enable_console = kwargs.get("enable_console", os.getenv("LOG_ENABLE_CONSOLE", "false").lower() == "true")

        self.logger = logging.getLogger(self.name)
        self.logger.setLevel(getattr(logging, str(log_level).upper()))
        self.logger.handlers.clear()
        self.logger.propagate = False

        context_filter = RunContextFilter()

        if str(log_format).lower() == "json":
            formatter: logging.Formatter = CustomJSONFormatter("%(message)s %(correlation_id)s %(command)s")
            console_formatter = formatter
        else:
            dev_format = (
                "%(asctime)s [%(levelname)s] %(name)s:%(lineno)d [%(correlation_id)s] %(command)s - %(message)s"
            )
            formatter = logging.Formatter(dev_format)
            console_formatter = ColoredFormatter(dev_format)

        if log_file:
            log_dir = os.path.dirname(log_file)
            try:
                if log_dir and not os.path.exists(log_dir):
                    os.makedirs(log_dir, exist_ok=True)
                file_handler = logging.handlers.RotatingFileHandler(
                    log_file, maxBytes=max_bytes, backupCount=backup_count
                )
                file_handler.setFormatter(formatter)
                file_handler.addFilter(context_filter)
                self.logger.addHandler(file_handler)
            except OSError:
                # Read-only working directories still get console output
                pass

        if enable_console:
            # stderr keeps CLI reports on stdout byte-identical
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(console_formatter)
            console_handler.addFilter(context_filter)
            self.logger.addHandler(console_handler)

        if not self.logger.handlers:
            self.logger.addHandler(logging.NullHandler())

        if STRUCTLOG_AVAILABLE:
            structlog.configure(
                processors=[
                    structlog.stdlib.filter_by_level,
                    structlog.stdlib.add_logger_name,
                    structlog.stdlib.add_log_level,
                    structlog.stdlib.PositionalArgumentsFormatter(),
                    structlog.processors.TimeStamper(fmt="iso"),
                    structlog.processors.StackInfoRenderer(),
                    structlog.processors.format_exc_info,
                    structlog.processors.UnicodeDecoder(),
                    structlog.processors.JSONRenderer()
                    if str(log_format).lower() == "json"
                    else structlog.dev.ConsoleRenderer(colors=False),
                ],
                context_class=dict,
                logger_factory=structlog.stdlib.LoggerFactory(),
                wrapper_class=structlog.stdlib.BoundLogger,
                cache_logger_on_first_use=True,
            )

        self._configured = True

        self.logger.debug(
            "Structured logging configured",
            extra={
                "event": "logging_configured",
                "log_level": log_level,
                "log_format": log_format,
                "log_file": log_file,
                "enable_console": enable_console,
            },
        )

        return self.logger

    def get_logger(self, name: Optional[str] = None) -> logging.Logger:
        """Get a logger instance."""
        if not self._configured:
            raise RuntimeError("Logger not configured. Call configure() first.")

        if name:
            return logging.getLogger(f"{self.name}.{name}")

        if self.logger is None:
            raise RuntimeError("Logger not properly initialized.")
        return self.logger


# Global logger instance
structured_logger = StructuredLogger()


@contextmanager
def run_context(command: str) -> Iterator[str]:
    """Bind a fresh correlation id and the command name for the duration of a CLI run."""
    correlation_id = str(uuid.uuid4())[:8]
    token = _run_context.set({"correlation_id": correlation_id, "command": command})
    try:
        yield correlation_id
    finally:
        _run_context.reset(token)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a logger instance."""
    if not structured_logger._configured:
        structured_logger.configure()
    return structured_logger.get_logger(name)


def get_struct_logger(name: str):
    """Get a structlog logger bound to the run context, falling back to stdlib logging."""
    if not structured_logger._configured:
        structured_logger.configure()
    if STRUCTLOG_AVAILABLE:
        return structlog.get_logger(f"hypertoric.{name}").bind(**_run_context.get())
    return get_logger(name)


def log_computation(operation: str, subject: Optional[str] = None, **kwargs):
    """Helper function to log a service computation."""
    try:
        logger = get_logger("computation")
        logger.info(
            f"Computation: {operation}",
            extra={"event": "computation", "operation": operation, "subject": subject, **kwargs},
        )
    except Exception:
        logging.getLogger("hypertoric.computation").info(f"Computation: {operation} on {subject}")


def log_performance_metric(metric_name: str, value: float, unit: str = "ms", **kwargs):
    """Helper function to log performance metrics."""
    try:
        logger = get_logger("performance")
        logger.info(
            f"Performance metric: {metric_name}",
            extra={"event": "performance_metric", "metric_name": metric_name, "value": value, "unit": unit, **kwargs},
        )
    except Exception:
        logging.getLogger("hypertoric.performance").info(f"Performance metric: {metric_name}={value}{unit}")


def log_verification_event(check: str, passed: bool, **kwargs):
    """Helper function to log the outcome of a verification check."""
    try:
        logger = get_logger("verification")
        level = logging.INFO if passed else logging.WARNING
        logger.log(
            level,
            f"Verification: {check} {'passed' if passed else 'FAILED'}",
            extra={"event": "verification", "check": check, "passed": passed, **kwargs},
        )
    except Exception:
        logging.getLogger("hypertoric.verification").info(f"Verification: {check} passed={passed}")
