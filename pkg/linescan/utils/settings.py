# utils/settings.py
import os

from linescan.utils.errors import InvalidArgumentError

DEFAULT_DENSE_LIMIT = 8192


def get_dense_limit(fallback: int | None = None) -> int:
    """
    Return the largest n allowed for dense Gram summaries:
    - If `fallback` is provided, return it.
    - Else try env var LINESCAN_DENSE_LIMIT.
    - Else default to 8192 (two (n+1)^2 float64 tables, ~1 GB).
    """
    if fallback:
        return int(fallback)

    env_limit = os.getenv("LINESCAN_DENSE_LIMIT")
    if env_limit:
        return int(env_limit)

    return DEFAULT_DENSE_LIMIT


def get_threads(fallback: int | None = None) -> int:
    """
    Return the worker count for scans and experiment trials:
    - `fallback` if provided, else env var LINESCAN_THREADS, else 1.
    - 0 means auto (one worker per CPU).
    """
    if fallback is None:
        env_threads = os.getenv("LINESCAN_THREADS")
        fallback = int(env_threads) if env_threads else 1

    if fallback < 0:
        raise InvalidArgumentError(f"threads must be >= 0, got {fallback}")
    if fallback == 0:
        return os.cpu_count() or 1
    return fallback
