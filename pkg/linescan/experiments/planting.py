# experiments/planting.py
from __future__ import annotations

from typing import Optional

import numpy as np

from linescan.experiments.distributions import make_rng, sample
from linescan.models.experiment import DistributionSpec
from linescan.models.interval import Interval
from linescan.models.samples import SampleSeries
from linescan.utils.errors import InvalidArgumentError


def plant_instance(
    p: DistributionSpec,
    q: DistributionSpec,
    n: int,
    anomaly: Optional[Interval],
    rng_seed,
) -> SampleSeries:
    """
    Reference: n draws from p. Observed: n draws from p, except nodes inside
    `anomaly`, which are redrawn from q. anomaly=None is the null hypothesis.
    """
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n}")
    if anomaly is not None:
        anomaly.check_within(n)

    rng = make_rng(rng_seed)
    reference = sample(p, n, rng)
    observed = sample(p, n, rng)
    if anomaly is not None:
        observed[anomaly.start:anomaly.stop] = sample(q, anomaly.length, rng)
    return SampleSeries(reference, observed)


def uniform_anomaly(n: int, length: int, rng: np.random.Generator) -> Interval:
    """Interval of the given length with a uniformly drawn start."""
    if not (1 <= length <= n):
        raise InvalidArgumentError(f"anomaly length {length} must lie in [1, {n}]")
    return Interval(int(rng.integers(0, n - length + 1)), length)
