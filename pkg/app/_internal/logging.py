"""Logging configuration with environment variable support.

Records from the solver go to stderr through the "app" logger; stdout carries
result payloads only. The level comes from LOG_LEVEL, or from --log-level on
the command line, which wins.
"""

import logging
import os
import sys

# Batch runs keep stderr quiet unless asked otherwise
DEFAULT_LOG_LEVEL = "WARNING"

VALID_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

ROOT_LOGGER = "app"

_handler: logging.Handler | None = None


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever sys.stderr is at emit time (redirections included)."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def get_log_level(override: str | None = None) -> int:
    """Resolve the log level from an explicit name or LOG_LEVEL.

    Args:
        override: Level name taking precedence over the environment

    Returns:
        Logging level constant (e.g., logging.WARNING); unknown names fall back to the default
    """
    level_str = (override or os.getenv("LOG_LEVEL", DEFAULT_LOG_LEVEL)).upper()

    if level_str not in VALID_LEVELS:
        level_str = DEFAULT_LOG_LEVEL

    return getattr(logging, level_str)


def setup_logging(level: str | None = None) -> None:
    """Attach the stderr handler to the "app" logger and set its level.

    The handler is attached once; later calls only change the level when one
    is given explicitly.
    """
    global _handler
    logger = logging.getLogger(ROOT_LOGGER)
    if _handler is None:
        _handler = _StderrHandler()
        _handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(_handler)
        logger.setLevel(get_log_level(level))
    elif level is not None:
        logger.setLevel(get_log_level(level))


def get_logger(name: str) -> logging.Logger:
    """Get a logger for the given name.

    Ensures logging is configured before returning the logger.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger instance
    """
    setup_logging()
    return logging.getLogger(name)
