import logging
import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def _int_setting(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except (ValueError, TypeError):
        logger.warning("Invalid %s value %r, using default %d", name, raw, default)
        return default
    if value < minimum:
        logger.warning("%s must be >= %d (got %d), using default %d", name, minimum, value, default)
        return default
    return value


LOG_LEVEL = os.getenv("RECONF_LOG_LEVEL", "WARNING").upper()

# k**n ceiling for the brute-force reconfiguration graph
ORACLE_STATE_LIMIT = _int_setting("RECONF_ORACLE_STATE_LIMIT", 10_000_000, minimum=1)

BRUTEFORCE_MAX_N = _int_setting("RECONF_BRUTEFORCE_MAX_N", 20, minimum=1)

BENCH_WORKERS = _int_setting("RECONF_BENCH_WORKERS", 1, minimum=1)

DEFAULT_SEED = _int_setting("RECONF_DEFAULT_SEED", 0)
