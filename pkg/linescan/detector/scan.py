# detector/scan.py
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from math import ceil
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from linescan.detector.thresholds import (
    cardinality_limit,
    extension_length_floor,
    prescan_threshold,
    threshold_from_config,
)
from linescan.intervals.candidates import candidate_count
from linescan.intervals.dyadic import dyadic_grid
from linescan.intervals.extensions import extension_union
from linescan.mmd.estimators import interval_statistics, length_sweep, start_sweep
from linescan.mmd.summaries import build_summaries
from linescan.models.interval import Interval
from linescan.models.kernel import Kernel
from linescan.models.samples import GramSummaries, SampleSeries
from linescan.models.scan_outcome import ScanOutcome
from linescan.models.test_config import TestConfig
from linescan.utils.errors import InvalidArgumentError
from linescan.utils.settings import get_dense_limit, get_threads

logger = logging.getLogger(__name__)

# (statistic, length, start); None while nothing has been evaluated
Best = Optional[Tuple[float, int, int]]


# ------------ helpers ------------

def _better(a: Best, b: Best) -> Best:
    """Larger statistic wins; ties go to the shorter, then leftmost interval."""
    if a is None:
        return b
    if b is None:
        return a
    if b[0] > a[0] or (b[0] == a[0] and (b[1], b[2]) < (a[1], a[2])):
        return b
    return a


def _reduce(candidates: Iterable[Best]) -> Best:
    best: Best = None
    for cand in candidates:
        best = _better(best, cand)
    return best


def _best_of(intervals: Sequence[Interval], stats: np.ndarray) -> Best:
    return _reduce((float(s), iv.length, iv.start) for iv, s in zip(intervals, stats))


def _check_sizes(series: SampleSeries, config: TestConfig) -> None:
    if config.i_min > series.n:
        raise InvalidArgumentError(f"i_min={config.i_min} exceeds network size n={series.n}")


def _summaries_for(
    series: SampleSeries,
    kernel: Kernel,
    config: TestConfig,
    summaries: GramSummaries | None,
    default_mode: str,
    workers: int,
) -> GramSummaries:
    if summaries is not None:
        if summaries.n != series.n or summaries.kernel != kernel:
            raise InvalidArgumentError("precomputed summaries do not match the series and kernel")
        return summaries
    mode = config.summary_mode or default_mode
    return build_summaries(series, kernel, mode, workers=workers)


def _outcome(best: Best, *, alarm_trigger: str | None, evaluations: int, threshold: float, diagnostics: dict) -> ScanOutcome:
    best_interval = None if best is None else Interval(best[2], best[1])
    return ScanOutcome(
        decision="H0" if alarm_trigger is None else "H1",
        best_interval=best_interval,
        best_statistic=float("-inf") if best is None else best[0],
        evaluations=evaluations,
        trigger="none" if alarm_trigger is None else alarm_trigger,
        threshold=threshold,
        diagnostics=diagnostics,
    )


# ------------ exhaustive scan ------------

def scan_exhaustive(
    series: SampleSeries,
    kernel: Kernel,
    config: TestConfig,
    *,
    summaries: GramSummaries | None = None,
    workers: int | None = None,
) -> ScanOutcome:
    """
    max over |I| >= i_min of mmd^2_{u,I}: decide H1 iff the maximum >= t.
    Work is split by interval length (dense) or start (streaming) and reduced
    in a fixed order, so the outcome does not depend on `workers`.
    """
    _check_sizes(series, config)
    n = series.n
    workers = get_threads(workers)
    t = threshold_from_config(config, n)
    default_mode = "dense" if n <= get_dense_limit() else "streaming"
    summaries = _summaries_for(series, kernel, config, summaries, default_mode, workers)

    if summaries.mode == "dense":
        def _task(length: int) -> Best:
            stats = length_sweep(summaries, length)
            i = int(np.argmax(stats))
            return float(stats[i]), length, i
        units = range(config.i_min, n + 1)
    else:
        def _task(start: int) -> Best:
            stats = start_sweep(summaries, start, config.i_min)
            i = int(np.argmax(stats))
            return float(stats[i]), config.i_min + i, start
        units = range(0, n - config.i_min + 1)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            best = _reduce(pool.map(_task, units))
    else:
        best = _reduce(map(_task, units))

    evaluations = candidate_count(n, config.i_min)
    alarm = best is not None and best[0] >= t
    logger.info("exhaustive scan n=%d i_min=%d: max=%.6g t=%.6g -> %s",
                n, config.i_min, best[0], t, "H1" if alarm else "H0")
    return _outcome(
        best,
        alarm_trigger="exhaustive_max" if alarm else None,
        evaluations=evaluations,
        threshold=t,
        diagnostics={"algorithm": "exhaustive", "n": n, "i_min": config.i_min, "mode": summaries.mode},
    )


# ------------ multiscale scan ------------

def scan_multiscale(
    series: SampleSeries,
    kernel: Kernel,
    config: TestConfig,
    *,
    summaries: GramSummaries | None = None,
    workers: int | None = None,
) -> ScanOutcome:
    """
    Multiscale detection over dyadic intervals and their extensions.

    1. pre-scan dyadic intervals with |I| >= ceil(i_min / 4); keep those with statistic >= t'
    2. too many survivors -> H1 (cardinality)
    3. a survivor above 2t / sqrt(1 + eta/2) -> H1 (prescan_max)
    4. extend survivors longer than the length floor by `levels` rounds
    5. an extension above t -> H1 (extension_max); otherwise H0
    """
    _check_sizes(series, config)
    n = series.n
    workers = get_threads(workers)
    t = threshold_from_config(config, n)
    t_prime = t / 2.0 if config.t_prime is None else config.t_prime
    if not t_prime < t:
        raise InvalidArgumentError(f"t_prime={t_prime} must be below t={t}")
    eta = config.eta
    delta_alg = config.resolved_delta_alg
    levels = config.resolved_levels
    summaries = _summaries_for(series, kernel, config, summaries, "streaming", workers)

    grid = dyadic_grid(n)
    min_length = max(2, ceil(config.i_min / 4))
    prescan: List[Interval] = [iv for iv in grid.intervals if iv.length >= min_length]
    prescan_stats = interval_statistics(summaries, prescan)
    evaluations = len(prescan)
    best = _best_of(prescan, prescan_stats)

    survivors = [(iv, float(s)) for iv, s in zip(prescan, prescan_stats) if s >= t_prime]
    limit = cardinality_limit(n, t, t_prime, eta, delta_alg)
    raise_at = prescan_threshold(t, eta)
    floor = (
        extension_length_floor(kernel.bound, t, eta, n)
        if config.extension_min_length is None
        else config.extension_min_length
    )
    diagnostics = {
        "algorithm": "multiscale",
        "n": n,
        "i_min": config.i_min,
        "mode": summaries.mode,
        "t_prime": t_prime,
        "levels": levels,
        "prescan_size": len(prescan),
        "prescan_survivors": len(survivors),
        "cardinality_limit": limit,
        "prescan_threshold": raise_at,
        "extension_min_length": floor,
    }

    def _done(trigger: str | None, extension_size: int = 0) -> ScanOutcome:
        diagnostics["extension_size"] = extension_size
        logger.info("multiscale scan n=%d: %d evaluations, trigger=%s", n, evaluations, trigger or "none")
        return _outcome(best, alarm_trigger=trigger, evaluations=evaluations, threshold=t, diagnostics=diagnostics)

    if len(survivors) > limit:
        return _done("cardinality")
    if survivors and max(s for _, s in survivors) > raise_at:
        return _done("prescan_max")

    bases = [iv for iv, _ in survivors if iv.length > floor]
    extended = extension_union(grid, levels, bases)
    extended_stats = interval_statistics(summaries, extended)
    evaluations += len(extended)
    best = _better(best, _best_of(extended, extended_stats))

    if len(extended) and float(np.max(extended_stats)) > t:
        return _done("extension_max", len(extended))
    return _done(None, len(extended))


def scan(series: SampleSeries, kernel: Kernel, config: TestConfig, **kwargs) -> ScanOutcome:
    if config.algorithm == "multiscale":
        return scan_multiscale(series, kernel, config, **kwargs)
    return scan_exhaustive(series, kernel, config, **kwargs)
