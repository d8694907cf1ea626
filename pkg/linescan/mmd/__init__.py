from .estimators import (
    interval_statistic,
    interval_statistics,
    length_sweep,
    mmd2_unbiased,
    start_sweep,
)
from .population import mmd2_population_gaussian, mmd2_population_mixture
from .summaries import PairSumAccumulator, build_summaries

__all__ = [
    "mmd2_unbiased",
    "interval_statistic",
    "interval_statistics",
    "length_sweep",
    "start_sweep",
    "mmd2_population_gaussian",
    "mmd2_population_mixture",
    "PairSumAccumulator",
    "build_summaries",
]
