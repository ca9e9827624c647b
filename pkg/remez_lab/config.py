"""
Runtime defaults and environment overrides.
"""

import logging
import os
from typing import Optional

from remez_lab.exceptions import CapExceededError, ConfigurationError

DEFAULT_ENUMERATION_CAP = 10**7
OMEGA2_CAP = 2**20

CAP_ENV_VAR = "REMEZ_LAB_CAP"
LOG_LEVEL_ENV_VAR = "REMEZ_LAB_LOG_LEVEL"

# norm oracle
DEFAULT_SAMPLES_PER_AXIS = 512
DEFAULT_RESTARTS = 8
DEFAULT_TORUS_TOL = 1e-10

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def enumeration_cap() -> int:
    """Return the enumeration cap, honouring the REMEZ_LAB_CAP override."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}") from e
    if cap < 1:
        raise ConfigurationError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}")
    return cap


def check_cap(size: int, cap: Optional[int] = None, what: str = "grid") -> None:
    """Raise CapExceededError when an enumeration of `size` points is too large."""
    limit = enumeration_cap() if cap is None else cap
    if size > limit:
        raise CapExceededError(f"{what} has {size} points, above the enumeration cap {limit}")


def default_log_level() -> int:
    name = os.environ.get(LOG_LEVEL_ENV_VAR, "INFO").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else default_log_level(), format=LOG_FORMAT)
