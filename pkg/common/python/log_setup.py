"""
falg — Shared Logging Configuration

Configures the ``falg`` logger tree with a rotating file handler and console
output. Library modules only call ``logging.getLogger("falg.<area>")``;
front ends call ``setup_logging`` once.

Console output goes to stderr so reports on stdout stay byte-identical
between runs.

Log files:  <repo>/logs/<name>.log  (10 MB per file, 5 backups)

Usage:
    from common.python.log_setup import setup_logging
    logger = setup_logging("cli")
    logger.critical("falg starting...")
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

PROJECT_LOGGER = "falg"
LOG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "logs")
LOG_FORMAT = "%(asctime)s %(levelname)-8s [%(name)s] %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
MAX_BYTES = 10 * 1024 * 1024  # 10 MB
BACKUP_COUNT = 5


def setup_logging(name: str, log_dir: str = None,
                  console_level: int = logging.WARNING) -> logging.Logger:
    """
    Configure the project logger and return the named child logger.

    Args:
        name:           Front-end name (e.g., "cli"); also names the log file
        log_dir:        Override log directory (default: <repo>/logs/)
        console_level:  Level for the stderr handler (file handler is always DEBUG)

    Returns:
        logging.Logger named ``falg.<name>``
    """
    root = logging.getLogger(PROJECT_LOGGER)
    root.setLevel(logging.DEBUG)

    # Avoid duplicate handlers if called multiple times
    if root.handlers:
        set_console_level(console_level)
        return logging.getLogger(f"{PROJECT_LOGGER}.{name.lower()}")

    formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

    if log_dir is None:
        log_dir = LOG_DIR
    try:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, f"{name.lower()}.log"),
            maxBytes=MAX_BYTES, backupCount=BACKUP_COUNT,
        )
    except OSError:
        file_handler = None  # read-only checkout: console only
    if file_handler is not None:
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    return logging.getLogger(f"{PROJECT_LOGGER}.{name.lower()}")


def set_console_level(level: int):
    """Change the stderr handler level (``--verbose``)."""
    for handler in logging.getLogger(PROJECT_LOGGER).handlers:
        if type(handler) is logging.StreamHandler:
            handler.setLevel(level)
