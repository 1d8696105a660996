import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from ruamel.yaml import YAML

from config.config import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_GRID_N,
    DEFAULT_REL_TOL,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LOG_LEVEL,
    SCAN_EQUALITY_REL_TOL,
    TOL_ENV_VAR,
)
from src.core.errors import ConfigError
from src.utils.logger import get_logger

logger = get_logger(__name__)

REPO_ROOT = Path(__file__).resolve().parents[2]

DEFAULTS = {
    "tolerance": {"rel": DEFAULT_REL_TOL},
    "scan": {
        "grid_n": DEFAULT_GRID_N,
        "seed": DEFAULT_SEED,
        "trials": DEFAULT_TRIALS,
        "equality_rel": SCAN_EQUALITY_REL_TOL,
    },
    "logging": {"level": LOG_LEVEL},
}


def load_config(config_path: str = DEFAULT_CONFIG_PATH):
    path = Path(config_path)
    if not path.is_absolute():
        path = REPO_ROOT / path
    try:
        yaml = YAML(typ='safe')
        with open(path, "r") as f:
            return yaml.load(f) or {}
    except Exception as e:
        raise ConfigError(f"Failed to load config {config_path}: {e}")


def load_settings(config_path: str = DEFAULT_CONFIG_PATH) -> dict:
    """
    Defaults merged with config.yaml and the environment.
    A missing config file leaves the defaults in place.
    """
    settings = {section: dict(values) for section, values in DEFAULTS.items()}
    path = Path(config_path)
    if not path.is_absolute():
        path = REPO_ROOT / path
    if path.exists():
        loaded = load_config(str(path))
        for section, values in loaded.items():
            if isinstance(values, dict) and section in settings:
                settings[section].update(values)
    else:
        logger.warning(f"Config file {path} not found; using defaults")

    load_dotenv()
    env_tol = os.getenv(TOL_ENV_VAR)
    if env_tol:
        try:
            settings["tolerance"]["rel"] = float(env_tol)
        except ValueError as e:
            raise ConfigError(f"Invalid {TOL_ENV_VAR}={env_tol!r}: {e}")
    return settings


@lru_cache(maxsize=None)
def default_rel_tol() -> float:
    """Read once per process; clear with default_rel_tol.cache_clear() after changing NIEP3_TOL."""
    try:
        return float(load_settings()["tolerance"]["rel"])
    except ConfigError:
        return DEFAULT_REL_TOL
