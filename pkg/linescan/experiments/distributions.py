# experiments/distributions.py
from __future__ import annotations

import numpy as np

from linescan.mmd.estimators import mmd2_unbiased
from linescan.mmd.population import mmd2_population_mixture
from linescan.models.experiment import DistributionSpec
from linescan.models.kernel import Kernel
from linescan.utils.errors import InvalidArgumentError


def make_rng(rng_seed) -> np.random.Generator:
    """int, SeedSequence or an existing Generator (passed through)."""
    return np.random.default_rng(rng_seed)


def sample(dist: DistributionSpec, count: int, rng_seed) -> np.ndarray:
    """`count` i.i.d. draws from `dist`; identical for identical seeds."""
    if not isinstance(dist, DistributionSpec):
        raise InvalidArgumentError(f"expected a DistributionSpec, got {type(dist)!r}")
    if count < 1:
        raise InvalidArgumentError(f"count must be >= 1, got {count}")

    rng = make_rng(rng_seed)
    weights = np.array([w for w, _, _ in dist.components])
    means = np.array([m for _, m, _ in dist.components])
    variances = np.array([v for _, _, v in dist.components])

    if len(weights) == 1:
        idx = np.zeros(count, dtype=np.int64)
    else:
        idx = rng.choice(len(weights), size=count, p=weights / weights.sum())

    if dist.kind == "laplace_mixture":
        # Laplace(b) has variance 2 b^2
        return rng.laplace(means[idx], np.sqrt(variances[idx] / 2.0))
    return rng.normal(means[idx], np.sqrt(variances[idx]))


def population_mmd2(
    p: DistributionSpec,
    q: DistributionSpec,
    kernel: Kernel,
    *,
    samples: int = 4000,
    rng_seed: int = 0,
) -> float:
    """
    MMD^2[p, q] under `kernel`: closed form for Gaussian families with the
    Gaussian kernel, otherwise a seeded unbiased Monte Carlo estimate.
    """
    if kernel.kind == "gaussian" and p.is_gaussian_family and q.is_gaussian_family:
        return kernel.bound * mmd2_population_mixture(p.components, q.components, kernel.bandwidth)

    rng = make_rng(rng_seed)
    return mmd2_unbiased(sample(p, samples, rng), sample(q, samples, rng), kernel)
