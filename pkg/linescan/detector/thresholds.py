# detector/thresholds.py
"""
Threshold and length rules of the scan test.

Every "log n" in these formulas is the natural log; the base only rescales
constants that are not sharp anyway.
"""
from __future__ import annotations

from math import ceil, isfinite, log, sqrt

from linescan.models.test_config import (
    DecayingThreshold,
    FixedThreshold,
    KnownMMDThreshold,
    TestConfig,
)
from linescan.utils.errors import InvalidArgumentError


def threshold_known(mmd2: float, delta: float) -> float:
    """t = (1 - delta) MMD^2[p, q] for a known MMD^2 and 0 < delta < 1."""
    if not (isfinite(mmd2) and mmd2 > 0):
        raise InvalidArgumentError(f"mmd2 must be positive, got {mmd2!r}")
    if not (0.0 < delta < 1.0):
        raise InvalidArgumentError(f"delta must lie in (0, 1), got {delta!r}")
    return (1.0 - delta) * mmd2


def threshold_decaying(n: float, *, scale: float = 4.0, exponent: float = 0.9) -> float:
    """t_n = 4 sqrt(ln n / n^0.9) by default; tends to 0 as n grows."""
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n!r}")
    return scale * sqrt(log(n) / n ** exponent)


def i_min_bound(K: float, t: float, eta: float, n: float) -> int:
    """ceil(16 K^2 (1 + eta) ln n / t^2): the minimum candidate length that keeps the test consistent."""
    if not t > 0:
        raise InvalidArgumentError(f"t must be positive, got {t!r}")
    if not (K > 0 and eta > 0):
        raise InvalidArgumentError("K and eta must be positive")
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n!r}")
    return ceil(16.0 * K * K * (1.0 + eta) * log(n) / (t * t))


def threshold_from_config(config: TestConfig, n: int) -> float:
    rule = config.threshold
    if isinstance(rule, FixedThreshold):
        return rule.t
    if isinstance(rule, KnownMMDThreshold):
        return threshold_known(rule.mmd2, rule.delta)
    if isinstance(rule, DecayingThreshold):
        return threshold_decaying(n, scale=rule.scale, exponent=rule.exponent)
    raise InvalidArgumentError(f"Unsupported threshold rule: {rule!r}")


# ---- multiscale rules ------------------------------------------------------

def cardinality_limit(n: int, t: float, t_prime: float, eta: float, delta_alg: float) -> float:
    """n^(1 - t'^2 (1 + eta) / (4 t^2) + delta): more pre-scan survivors than this raises an alarm."""
    return float(n) ** (1.0 - (t_prime * t_prime) * (1.0 + eta) / (4.0 * t * t) + delta_alg)


def prescan_threshold(t: float, eta: float) -> float:
    """2t / sqrt(1 + eta/2)."""
    return 2.0 * t / sqrt(1.0 + eta / 2.0)


def extension_length_floor(K: float, t: float, eta: float, n: int) -> float:
    """16 K^2 (1 + eta/2) ln n / t^2: only longer pre-scan survivors get extended."""
    return 16.0 * K * K * (1.0 + eta / 2.0) * log(n) / (t * t)
