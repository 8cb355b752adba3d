"""
Logging setup for the clique-copy laboratory.

Library modules only call ``logging.getLogger(__name__)``; entry points call
``setup_logger`` once so that records go to stderr (and optionally a file)
and never mix with result files written to stdout.
"""
import logging
import os
import sys
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL_ENV = "CLUSTERLAB_LOG_LEVEL"


def resolve_level(level: Union[int, str, None]) -> int:
    """Turn a level name, number or ``None`` (use the environment) into a logging level."""
    if level is None:
        level = os.getenv(LOG_LEVEL_ENV, "WARNING")
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError(f"unknown log level: {level}")
    return value


def setup_logger(
    name: str = "clusterlab", log_file: Optional[str] = None, level: Union[int, str, None] = None
) -> logging.Logger:
    """
    Set up a logger with a stderr handler and an optional file handler.

    Args:
        name (str): Name of the logger
        log_file (str): Path to log file (optional)
        level (int | str): Logging level; defaults to $CLUSTERLAB_LOG_LEVEL or WARNING

    Returns:
        Logger: Configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(resolve_level(level))

    formatter = logging.Formatter(LOG_FORMAT)

    if not any(getattr(h, "_clusterlab", False) for h in logger.handlers):
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler._clusterlab = True
        logger.addHandler(console_handler)

        if log_file:
            log_dir = os.path.dirname(log_file)
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir)
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            file_handler._clusterlab = True
            logger.addHandler(file_handler)

    return logger
