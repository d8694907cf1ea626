# models/samples.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from linescan.models.kernel import Kernel
from linescan.utils.errors import InsufficientSamplesError, InvalidArgumentError

SummaryMode = Literal["dense", "streaming"]


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite values")
    arr.flags.writeable = False
    return arr


@dataclass(slots=True, frozen=True)
class SampleSeries:
    """
    Reference sequence X (n draws from p) and observed sequence Y (one sample
    per node of the line network). Arrays are copied and made read-only.
    """
    reference: np.ndarray
    observed: np.ndarray

    def __post_init__(self):
        ref = _frozen_array(self.reference, "reference")
        obs = _frozen_array(self.observed, "observed")
        if ref.shape[0] != obs.shape[0]:
            raise InvalidArgumentError(
                f"reference and observed must have the same length, got {ref.shape[0]} and {obs.shape[0]}"
            )
        if ref.shape[0] < 2:
            raise InsufficientSamplesError("a series needs at least 2 nodes")
        object.__setattr__(self, "reference", ref)
        object.__setattr__(self, "observed", obs)

    @property
    def n(self) -> int:
        return int(self.observed.shape[0])


@dataclass(slots=True, frozen=True, kw_only=True)
class GramSummaries:
    """
    Kernel aggregates behind every per-interval statistic.

    - reference_pair_sum: sum over i != j of k(x_i, x_j)
    - cross_column_prefix: prefix sums of c_j = sum_i k(x_i, y_j), length n+1
    - observed_diag_prefix: prefix sums of k(y_j, y_j), length n+1
    - observed_pair_prefix, observed_pair_residual: dense mode only, the
      prefix table P[a][b] = sum_{i<a, j<b} k(y_i, y_j) held as an unevaluated
      float64 pair (P = prefix + residual) so interval differences keep full precision
    - observed: the observed samples, kept for streaming accumulators
    """
    kernel: Kernel
    mode: SummaryMode
    n: int
    reference_pair_sum: float
    cross_column_prefix: np.ndarray
    observed_diag_prefix: np.ndarray
    observed: np.ndarray
    observed_pair_prefix: Optional[np.ndarray] = None
    observed_pair_residual: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.mode not in ("dense", "streaming"):
            raise InvalidArgumentError(f"Unsupported summary mode: {self.mode!r}")
        if self.mode == "dense" and (self.observed_pair_prefix is None or self.observed_pair_residual is None):
            raise InvalidArgumentError("dense summaries need observed_pair_prefix and observed_pair_residual")

    @property
    def reference_term(self) -> float:
        """(1 / (n(n-1))) sum_{i != j} k(x_i, x_j), shared by every interval."""
        return self.reference_pair_sum / (self.n * (self.n - 1))
