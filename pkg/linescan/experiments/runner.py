# experiments/runner.py
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from math import log
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from linescan.detector.scan import scan
from linescan.experiments.planting import plant_instance, uniform_anomaly
from linescan.experiments.plans import Configuration, ExperimentPlan, configurations, scan_config, with_seed
from linescan.models.experiment import ErrorEstimate
from linescan.models.interval import Interval
from linescan.utils.errors import TrialsFailedError
from linescan.utils.settings import get_threads

logger = logging.getLogger(__name__)

ESTIMATE_COLUMNS = ["n", "i_min", "t", "p_e", "p_h0_err", "p_h1_err", "std_err", "trials"]

EstimateTable = Dict[Tuple[int, int, float], ErrorEstimate]


def trial_seed(plan_seed: int, config_index: int, trial_index: int, hypothesis: int) -> np.random.SeedSequence:
    """Independent stream per (configuration, trial, hypothesis); no coupling between sweep points."""
    return np.random.SeedSequence(entropy=plan_seed, spawn_key=(config_index, trial_index, hypothesis))


def _anomaly(plan: ExperimentPlan, cfg: Configuration, rng: np.random.Generator) -> Interval:
    if plan.placement.rule == "fixed":
        return Interval(plan.placement.start, plan.placement.length)
    return uniform_anomaly(cfg.n, cfg.i_min, rng)


def run_trial(plan: ExperimentPlan, cfg: Configuration, config_index: int, trial_index: int) -> Tuple[bool, bool]:
    """(false alarm under H0, miss under H1) for one trial pair."""
    p, q = plan.p.to_spec(), plan.q.to_spec()
    kernel = plan.kernel.to_kernel()
    test_config = scan_config(plan, cfg)

    rng0 = np.random.default_rng(trial_seed(plan.seed, config_index, trial_index, 0))
    null = plant_instance(p, q, cfg.n, None, rng0)
    false_alarm = scan(null, kernel, test_config, workers=1).decision == "H1"

    rng1 = np.random.default_rng(trial_seed(plan.seed, config_index, trial_index, 1))
    planted = plant_instance(p, q, cfg.n, _anomaly(plan, cfg, rng1), rng1)
    miss = scan(planted, kernel, test_config, workers=1).decision == "H0"
    return false_alarm, miss


def _estimate(plan: ExperimentPlan, cfg: Configuration, config_index: int, pool: Optional[ThreadPoolExecutor]) -> ErrorEstimate:
    def _safe(trial_index: int):
        try:
            return run_trial(plan, cfg, config_index, trial_index)
        except Exception as e:  # tallied per configuration
            logger.warning("⚠️ trial %d of n=%d i_min=%d t=%.4g failed: %s", trial_index, cfg.n, cfg.i_min, cfg.t, e)
            return None

    indices = range(plan.trials)
    results = list(pool.map(_safe, indices)) if pool is not None else [_safe(i) for i in indices]
    done = [r for r in results if r is not None]
    failures = len(results) - len(done)
    if not done:
        raise TrialsFailedError(f"every trial failed for n={cfg.n}, i_min={cfg.i_min}, t={cfg.t}")

    return ErrorEstimate(
        n=cfg.n,
        i_min=cfg.i_min,
        t=cfg.t,
        p_h0_error=sum(fa for fa, _ in done) / len(done),
        p_h1_error=sum(miss for _, miss in done) / len(done),
        trials=len(done),
        failures=failures,
    )


def run_plan(plan: ExperimentPlan, *, workers: int | None = None) -> EstimateTable:
    """
    Monte Carlo error rates for every (n, i_min, t) of the plan: `trials`
    H0 instances and `trials` planted H1 instances per configuration.
    Results depend only on the plan (seed included), never on `workers`.
    """
    workers = get_threads(workers)
    plan = with_seed(plan)
    configs = configurations(plan)
    logger.info("plan %s: %d configurations x %d trials", plan.name, len(configs), plan.trials)
    p, q = plan.p.to_spec(), plan.q.to_spec()
    logger.info(
        "p: mean=%.4g var=%.4g, q: mean=%.4g var=%.4g", p.mean(), p.variance(), q.mean(), q.variance()
    )

    table: EstimateTable = {}
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for index, cfg in enumerate(configs):
            estimate = _estimate(plan, cfg, index, pool)
            table[cfg.key] = estimate
            logger.info("n=%d i_min=%d t=%.4g: P_e=%.4f (+/- %.4f)", cfg.n, cfg.i_min, cfg.t, estimate.p_e, estimate.std_error)
    finally:
        if pool is not None:
            pool.shutdown()
    return table


def estimates_frame(table: EstimateTable) -> pd.DataFrame:
    """One row per configuration, columns n,i_min,t,p_e,p_h0_err,p_h1_err,std_err,trials."""
    return pd.DataFrame([est.to_row() for est in table.values()], columns=ESTIMATE_COLUMNS)


def crossing_point(frame: pd.DataFrame, level: float, *, n: int | None = None, t: float | None = None) -> float:
    """
    First I_min / ln n (in increasing I_min order) where P_e <= level;
    NaN if the sweep never gets there.
    """
    rows = frame
    if n is not None:
        rows = rows[rows["n"] == n]
    if t is not None:
        rows = rows[np.isclose(rows["t"], t)]
    rows = rows.sort_values("i_min", kind="mergesort")
    hit = rows[rows["p_e"] <= level]
    if hit.empty:
        return float("nan")
    first = hit.iloc[0]
    return float(first["i_min"] / log(first["n"]))


def first_n_below(frame: pd.DataFrame, level: float) -> float:
    """Smallest n whose P_e <= level (NaN if none); used for network-size sweeps."""
    hit = frame[frame["p_e"] <= level].sort_values("n", kind="mergesort")
    return float("nan") if hit.empty else float(hit.iloc[0]["n"])
