# mmd/population.py
"""
Closed-form MMD^2 for Gaussian p, q under the Gaussian kernel.

For x ~ N(m1, v1), y ~ N(m2, v2) independent and bandwidth sigma:

    E k(x, y) = sigma / sqrt(sigma^2 + v1 + v2) * exp(-(m1 - m2)^2 / (2 (sigma^2 + v1 + v2)))

Mixtures follow by linearity over component pairs.
"""
from __future__ import annotations

from math import exp, isfinite, sqrt
from typing import Sequence, Tuple

from linescan.utils.errors import InvalidArgumentError

Component = Tuple[float, float, float]  # (weight, mean, variance)


def _expected_kernel(m1: float, v1: float, m2: float, v2: float, sigma: float) -> float:
    s2 = sigma * sigma + v1 + v2
    return sigma / sqrt(s2) * exp(-((m1 - m2) ** 2) / (2.0 * s2))


def _check(components: Sequence[Component], sigma: float) -> None:
    if not (isfinite(sigma) and sigma > 0):
        raise InvalidArgumentError(f"sigma must be positive, got {sigma!r}")
    for w, m, v in components:
        if v < 0:
            raise InvalidArgumentError(f"variance must be >= 0, got {v!r}")
        if w < 0:
            raise InvalidArgumentError(f"weight must be >= 0, got {w!r}")


def _mixture_expectation(a: Sequence[Component], b: Sequence[Component], sigma: float) -> float:
    return sum(
        wa * wb * _expected_kernel(ma, va, mb, vb, sigma)
        for wa, ma, va in a
        for wb, mb, vb in b
    )


def mmd2_population_mixture(
    p_components: Sequence[Component],
    q_components: Sequence[Component],
    sigma: float,
) -> float:
    """MMD^2 between two Gaussian mixtures given as (weight, mean, variance) triples."""
    _check(p_components, sigma)
    _check(q_components, sigma)
    return (
        _mixture_expectation(p_components, p_components, sigma)
        - 2.0 * _mixture_expectation(p_components, q_components, sigma)
        + _mixture_expectation(q_components, q_components, sigma)
    )


def mmd2_population_gaussian(mean1: float, var1: float, mean2: float, var2: float, sigma: float) -> float:
    """MMD^2 between N(mean1, var1) and N(mean2, var2); zero variances are point masses."""
    return mmd2_population_mixture([(1.0, mean1, var1)], [(1.0, mean2, var2)], sigma)
