# mmd/estimators.py
from __future__ import annotations

from itertools import groupby
from math import fsum
from typing import Iterable, List, Sequence

import numpy as np

from linescan.models.interval import Interval
from linescan.models.kernel import Kernel
from linescan.models.samples import GramSummaries
from linescan.mmd.summaries import PairSumAccumulator, kernel_row_sums, pair_sum, two_sum
from linescan.utils.errors import InsufficientSamplesError, InvalidArgumentError


def _as_samples(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape[0] < 2:
        raise InsufficientSamplesError(f"{name} needs at least 2 samples, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite values")
    return arr


def mmd2_unbiased(x_samples, y_samples, kernel: Kernel) -> float:
    """
    Unbiased MMD^2 between samples X (size n) and Y (size m):

        1/(n(n-1)) sum_{i!=j} k(x_i,x_j) + 1/(m(m-1)) sum_{i!=j} k(y_i,y_j)
        - 2/(nm) sum_{i,j} k(x_i,y_j)

    Can be negative; never clamped.
    """
    x = _as_samples(x_samples, "x_samples")
    y = _as_samples(y_samples, "y_samples")
    n, m = x.shape[0], y.shape[0]

    xx = pair_sum(kernel, x)
    yy = pair_sum(kernel, y)
    xy = fsum(kernel_row_sums(kernel, x, y))
    return xx / (n * (n - 1)) + yy / (m * (m - 1)) - 2.0 * xy / (n * m)


def _combine(summaries: GramSummaries, pair, cross, length):
    """Per-interval statistic from its observed pair sum and cross sum (scalar or array)."""
    return (
        summaries.reference_term
        + pair / (length * (length - 1.0))
        - 2.0 * cross / (summaries.n * length)
    )


def _check_interval(summaries: GramSummaries, interval: Interval) -> None:
    if interval.length < 2:
        raise InsufficientSamplesError(f"interval statistic needs |I| >= 2, got {interval.length}")
    interval.check_within(summaries.n)


def _dense_pair_sums(summaries: GramSummaries, starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
    hi = summaries.observed_pair_prefix
    lo = summaries.observed_pair_residual
    diag = summaries.observed_diag_prefix
    # inclusion-exclusion on the high parts with exact rounding errors kept
    block, e1 = two_sum(hi[stops, stops], -hi[starts, stops])
    block, e2 = two_sum(block, -hi[stops, starts])
    block, e3 = two_sum(block, hi[starts, starts])
    tail = (e1 + e2 + e3) + (lo[stops, stops] - lo[starts, stops] - lo[stops, starts] + lo[starts, starts])
    return (block - (diag[stops] - diag[starts])) + tail


def interval_statistic(summaries: GramSummaries, interval: Interval) -> float:
    """
    mmd^2_{u,I}[X, Y]: reference self-term over all n reference samples,
    observed self-term over pairs inside I, cross term over n x |I| pairs.
    """
    _check_interval(summaries, interval)
    s, e = interval.start, interval.stop
    cross = summaries.cross_column_prefix[e] - summaries.cross_column_prefix[s]

    if summaries.mode == "dense":
        pair = float(_dense_pair_sums(summaries, np.array([s]), np.array([e]))[0])
    else:
        pair = PairSumAccumulator(summaries.observed, summaries.kernel, s).extend_to(e)
    return float(_combine(summaries, pair, cross, interval.length))


def interval_statistics(summaries: GramSummaries, intervals: Iterable[Interval]) -> np.ndarray:
    """
    Statistics for many intervals, returned in input order.
    Streaming mode grows one accumulator per distinct start, shortest first.
    """
    intervals: List[Interval] = list(intervals)
    for iv in intervals:
        _check_interval(summaries, iv)
    if not intervals:
        return np.empty(0, dtype=float)

    starts = np.fromiter((iv.start for iv in intervals), dtype=np.int64, count=len(intervals))
    stops = np.fromiter((iv.stop for iv in intervals), dtype=np.int64, count=len(intervals))
    cross = summaries.cross_column_prefix[stops] - summaries.cross_column_prefix[starts]

    if summaries.mode == "dense":
        pairs = _dense_pair_sums(summaries, starts, stops)
    else:
        pairs = np.empty(len(intervals), dtype=float)
        order = sorted(range(len(intervals)), key=lambda i: (intervals[i].start, intervals[i].stop))
        for start, group in groupby(order, key=lambda i: intervals[i].start):
            acc = PairSumAccumulator(summaries.observed, summaries.kernel, start)
            for i in group:
                pairs[i] = acc.extend_to(intervals[i].stop)

    return _combine(summaries, pairs, cross, (stops - starts).astype(float))


def length_sweep(summaries: GramSummaries, length: int, starts: Sequence[int] | None = None) -> np.ndarray:
    """Statistics of every interval of one length, indexed by start (0 .. n - length)."""
    if length < 2:
        raise InsufficientSamplesError(f"interval statistic needs |I| >= 2, got {length}")
    if length > summaries.n:
        raise InvalidArgumentError(f"length {length} exceeds network size {summaries.n}")

    if starts is None:
        starts = np.arange(0, summaries.n - length + 1, dtype=np.int64)
    else:
        starts = np.asarray(starts, dtype=np.int64)

    if summaries.mode != "dense":
        return interval_statistics(summaries, (Interval(int(s), length) for s in starts))

    stops = starts + length
    cross = summaries.cross_column_prefix[stops] - summaries.cross_column_prefix[starts]
    return _combine(summaries, _dense_pair_sums(summaries, starts, stops), cross, float(length))


def start_sweep(summaries: GramSummaries, start: int, min_length: int) -> np.ndarray:
    """Statistics of [start, start + L) for L = min_length .. n - start, grown node by node."""
    if min_length < 2:
        raise InsufficientSamplesError(f"interval statistic needs |I| >= 2, got {min_length}")
    max_length = summaries.n - start
    if max_length < min_length:
        return np.empty(0, dtype=float)

    lengths = np.arange(min_length, max_length + 1, dtype=np.int64)
    stops = start + lengths
    cross = summaries.cross_column_prefix[stops] - summaries.cross_column_prefix[start]
    if summaries.mode == "dense":
        pairs = _dense_pair_sums(summaries, np.full(lengths.shape, start, dtype=np.int64), stops)
    else:
        acc = PairSumAccumulator(summaries.observed, summaries.kernel, start)
        pairs = np.fromiter((acc.extend_to(int(e)) for e in stops), dtype=float, count=lengths.shape[0])
    return _combine(summaries, pairs, cross, lengths.astype(float))
