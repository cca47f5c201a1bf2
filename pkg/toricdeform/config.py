import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_DEGREE_BOX_LIMIT = 200_000
DEFAULT_RANDOM_FANS = 100
DEFAULT_SEED = 0


@dataclass(frozen=True)
class Settings:
    log_level: str = DEFAULT_LOG_LEVEL
    degree_box_limit: int = DEFAULT_DEGREE_BOX_LIMIT
    random_fans: int = DEFAULT_RANDOM_FANS
    seed: int = DEFAULT_SEED


def _int_from_env(name, default):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def get_settings():
    """Read settings from the environment (a .env file is loaded by main.py)"""
    return Settings(
        log_level=os.getenv("TORICDEFORM_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        degree_box_limit=_int_from_env("TORICDEFORM_DEGREE_BOX_LIMIT", DEFAULT_DEGREE_BOX_LIMIT),
        random_fans=_int_from_env("TORICDEFORM_RANDOM_FANS", DEFAULT_RANDOM_FANS),
        seed=_int_from_env("TORICDEFORM_SEED", DEFAULT_SEED),
    )


def initialize_logging(level=None):
    """Configure root logging once; later calls only adjust the level"""
    level = (level or get_settings().log_level).upper()
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
    else:
        root.setLevel(level)
    logger.debug(f"Logging initialized at {level}")


# Initialize on import
initialize_logging()
