import logging
import sys
from pathlib import Path

from config.config import LOG_FILE, LOG_LEVEL

_configured = set()


def get_logger(name, level=None, log_file=None):
    """
    Configure and return a logger.
    name: Logger name
    level: Level name, defaults to LOG_LEVEL
    log_file: Log file path, defaults to LOG_FILE
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO))
    if name in _configured:
        return logger

    formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

    log_path = Path(log_file or LOG_FILE)
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError:
        # read-only checkout: stream handler only
        pass

    # stdout carries JSON/CSV results
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    _configured.add(name)
    return logger


def set_level(level: str):
    """Apply a level name to every logger handed out by get_logger."""
    resolved = getattr(logging, level.upper(), logging.INFO)
    for name in _configured:
        logging.getLogger(name).setLevel(resolved)
