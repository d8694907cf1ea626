# mmd/summaries.py
"""
Gram summaries: the kernel aggregates every per-interval statistic reuses.

Two modes:
- dense: a 2-D prefix table over the observed Gram matrix, O(1) pair sum
  per interval at O(n^2) memory (exhaustive scans at desk scale). The table
  is held as a float64 (prefix, residual) pair.
- streaming: no table; pair sums come from PairSumAccumulator, which grows
  an interval to the right at O(|I|) cost per added node (multiscale scans,
  which touch few intervals).
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from math import fsum
from typing import Literal

import numpy as np

from linescan.models.kernel import Kernel
from linescan.models.samples import GramSummaries, SampleSeries
from linescan.utils.errors import CapacityError, InvalidArgumentError
from linescan.utils.settings import get_dense_limit

logger = logging.getLogger(__name__)

ROW_CHUNK = 512


def _prefix(values: np.ndarray) -> np.ndarray:
    out = np.zeros(values.shape[0] + 1, dtype=float)
    np.cumsum(values, out=out[1:])
    out.flags.writeable = False
    return out


def two_sum(a, b):
    """Error-free sum, elementwise: s + err == a + b exactly (s is the rounded sum)."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _running_sum_rows(hi: np.ndarray, lo: np.ndarray) -> None:
    """In place: row a becomes the sum of rows 0..a, carried as hi + lo."""
    for a in range(1, hi.shape[0]):
        s, err = two_sum(hi[a - 1], hi[a])
        hi[a] = s
        lo[a] += lo[a - 1] + err


def pair_prefix_table(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    2-D prefix table of a symmetric Gram matrix as a (prefix, residual) pair
    of read-only (n+1, n+1) arrays. Both axes are accumulated with two_sum,
    so prefix + residual carries about twice the float64 precision.
    """
    n = gram.shape[0]
    hi = np.zeros((n + 1, n + 1), dtype=float)
    hi[1:, 1:] = gram
    lo = np.zeros_like(hi)
    _running_sum_rows(hi, lo)
    # second axis: the transposed table of a symmetric matrix is the table itself
    hi = np.ascontiguousarray(hi.T)
    lo = np.ascontiguousarray(lo.T)
    _running_sum_rows(hi, lo)
    for a in range(hi.shape[0]):
        hi[a], lo[a] = two_sum(hi[a], lo[a])
    hi.flags.writeable = False
    lo.flags.writeable = False
    return hi, lo


def kernel_row_sums(kernel: Kernel, rows: np.ndarray, cols: np.ndarray, *, workers: int = 1) -> np.ndarray:
    """
    sum_j k(rows[i], cols[j]) for every i, computed in fixed row chunks.
    Each chunk writes its own slice, so the result does not depend on `workers`.
    """
    rows = np.asarray(rows, dtype=float)
    cols = np.asarray(cols, dtype=float)
    out = np.empty(rows.shape[0], dtype=float)

    def _chunk(lo: int) -> None:
        hi = min(lo + ROW_CHUNK, rows.shape[0])
        out[lo:hi] = kernel.gram(rows[lo:hi], cols).sum(axis=1)

    starts = range(0, rows.shape[0], ROW_CHUNK)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(_chunk, starts))
    else:
        for lo in starts:
            _chunk(lo)
    return out


def pair_sum(kernel: Kernel, samples: np.ndarray, *, workers: int = 1) -> float:
    """sum_{i != j} k(s_i, s_j) with compensated summation across rows."""
    rows = kernel_row_sums(kernel, samples, samples, workers=workers)
    return fsum(rows) - fsum(kernel.diagonal(samples))


class PairSumAccumulator:
    """
    Sliding accumulator of sum_{i != j in [start, stop)} k(y_i, y_j).

    Starts empty at `start`; extend_to(stop) adds the new nodes' kernel
    values against the current block and among themselves.
    """

    def __init__(self, observed: np.ndarray, kernel: Kernel, start: int):
        self.observed = observed
        self.kernel = kernel
        self.start = start
        self.stop = start
        self.pair_sum = 0.0

    @property
    def length(self) -> int:
        return self.stop - self.start

    def extend_to(self, stop: int) -> float:
        if stop < self.stop:
            raise InvalidArgumentError(f"accumulator cannot shrink from {self.stop} to {stop}")
        if stop > self.observed.shape[0]:
            raise InvalidArgumentError(f"stop {stop} exceeds network size {self.observed.shape[0]}")
        if stop == self.stop:
            return self.pair_sum

        new = self.observed[self.stop:stop]
        block = self.kernel.gram(new, new)
        added = float(block.sum() - np.trace(block))
        if self.stop > self.start:
            added += 2.0 * float(self.kernel.gram(self.observed[self.start:self.stop], new).sum())

        self.pair_sum += added
        self.stop = stop
        return self.pair_sum


def build_summaries(
    series: SampleSeries,
    kernel: Kernel,
    mode: Literal["dense", "streaming"] = "dense",
    *,
    dense_limit: int | None = None,
    workers: int = 1,
) -> GramSummaries:
    """Precompute the reference self-term, cross-column prefix sums and (dense) the 2-D observed prefix table."""
    if mode not in ("dense", "streaming"):
        raise InvalidArgumentError(f"Unsupported summary mode: {mode!r}")

    n = series.n
    limit = get_dense_limit(dense_limit)
    if mode == "dense" and n > limit:
        raise CapacityError(
            f"dense summaries for n={n} exceed the limit of {limit} nodes; use streaming mode "
            f"or raise LINESCAN_DENSE_LIMIT"
        )

    x, y = series.reference, series.observed
    reference_pair_sum = pair_sum(kernel, x, workers=workers)
    # c_j = sum_i k(x_i, y_j) is the row sum of k(y_j, .) against X by symmetry
    cross_columns = kernel_row_sums(kernel, y, x, workers=workers)

    observed_pair_prefix = observed_pair_residual = None
    if mode == "dense":
        observed_pair_prefix, observed_pair_residual = pair_prefix_table(kernel.gram(y, y))

    logger.debug("built %s summaries for n=%d (kernel=%s, sigma=%g)", mode, n, kernel.kind, kernel.bandwidth)
    return GramSummaries(
        kernel=kernel,
        mode=mode,
        n=n,
        reference_pair_sum=reference_pair_sum,
        cross_column_prefix=_prefix(cross_columns),
        observed_diag_prefix=_prefix(kernel.diagonal(y)),
        observed=y,
        observed_pair_prefix=observed_pair_prefix,
        observed_pair_residual=observed_pair_residual,
    )
