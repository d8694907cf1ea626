# experiments/plans.py
"""
Declarative experiment plans (TOML), validated with pydantic.

    name = "test1"
    seed = 20240501
    trials = 200
    algorithm = "exhaustive"        # or "multiscale"
    eta = 0.5
    n_values = [40, 100, 200]

    [p]
    kind = "gaussian"
    mean = 0.0
    variance = 0.5

    [q]
    kind = "gaussian_mixture"
    components = [[0.5, -2.0, 0.5], [0.5, 2.0, 0.5]]

    [kernel]
    kind = "gaussian"
    sigma = 1.0

    [i_min]
    ratios = [1, 2, 3]              # or values = [...], or power = 0.9

    [threshold]
    mode = "fixed"                  # "known_mmd" (delta, optional mmd2) or "decaying"
    t = 0.25                        # a float or a list of floats

    [placement]
    rule = "uniform_min_length"     # or "fixed" with start / length
"""
from __future__ import annotations

import logging
import tomllib
from dataclasses import dataclass
from math import ceil, log
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, model_validator

from linescan.detector.thresholds import threshold_decaying, threshold_known
from linescan.experiments.distributions import population_mmd2
from linescan.models.experiment import DistributionSpec
from linescan.models.kernel import Kernel
from linescan.models.test_config import FixedThreshold, TestConfig
from linescan.utils.errors import LineScanError, PlanError

logger = logging.getLogger(__name__)


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class DistributionModel(_Model):
    kind: Literal["gaussian", "gaussian_mixture", "laplace_mixture"]
    mean: Optional[float] = None
    variance: Optional[float] = None
    components: Optional[List[Tuple[float, float, float]]] = None

    @model_validator(mode="after")
    def _check_shape(self):
        if self.kind == "gaussian":
            if self.mean is None or self.variance is None:
                raise ValueError("a gaussian needs mean and variance")
        elif not self.components:
            raise ValueError(f"{self.kind} needs components = [[weight, mean, variance], ...]")
        return self

    def to_spec(self) -> DistributionSpec:
        if self.kind == "gaussian":
            return DistributionSpec.gaussian(self.mean, self.variance)
        return DistributionSpec(kind=self.kind, components=tuple(self.components))


class KernelModel(_Model):
    kind: Literal["gaussian", "laplace"]
    sigma: PositiveFloat

    def to_kernel(self) -> Kernel:
        return Kernel.from_name(self.kind, self.sigma)


class IMinModel(_Model):
    values: Optional[List[int]] = None
    ratios: Optional[List[PositiveFloat]] = None
    power: Optional[PositiveFloat] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        given = [x for x in (self.values, self.ratios, self.power) if x is not None]
        if len(given) != 1:
            raise ValueError("[i_min] needs exactly one of values, ratios or power")
        return self

    def resolve(self, n: int) -> List[int]:
        """
        I_min values for network size n, in sweep order.
        Explicit values must fit in [2, n]; ratio- and power-derived values
        above n are dropped and repeats collapse.
        """
        if self.values is not None:
            bad = [v for v in self.values if not 2 <= v <= n]
            if bad:
                raise PlanError(f"i_min values {bad} are outside [2, {n}]")
            return list(dict.fromkeys(self.values))

        if self.ratios is not None:
            raw = [max(2, ceil(r * log(n))) for r in self.ratios]
        else:
            raw = [max(2, ceil(n ** self.power))]

        kept = [v for v in dict.fromkeys(raw) if v <= n]
        if len(kept) < len(raw):
            logger.info("n=%d: %d derived i_min values dropped or merged", n, len(raw) - len(kept))
        return kept


class ThresholdModel(_Model):
    mode: Literal["fixed", "known_mmd", "decaying"] = "fixed"
    t: Optional[Union[PositiveFloat, List[PositiveFloat]]] = None
    delta: Optional[float] = None
    mmd2: Optional[PositiveFloat] = None
    scale: PositiveFloat = 4.0
    exponent: PositiveFloat = 0.9

    @model_validator(mode="after")
    def _check_mode(self):
        if self.mode == "fixed" and self.t is None:
            raise ValueError("fixed thresholds need t")
        if self.mode == "known_mmd" and self.delta is None:
            raise ValueError("known_mmd thresholds need delta")
        return self


class PlacementModel(_Model):
    rule: Literal["uniform_min_length", "fixed"] = "uniform_min_length"
    start: Optional[int] = Field(default=None, ge=0)
    length: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_fixed(self):
        if self.rule == "fixed" and (self.start is None or self.length is None):
            raise ValueError("fixed placement needs start and length")
        return self


class ExperimentPlan(_Model):
    name: str = "experiment"
    seed: Optional[int] = Field(default=None, ge=0)
    trials: PositiveInt = 200
    algorithm: Literal["exhaustive", "multiscale"] = "exhaustive"
    eta: PositiveFloat = 0.5
    t_prime: Optional[PositiveFloat] = None
    delta_alg: Optional[PositiveFloat] = None
    levels: Optional[PositiveInt] = None
    extension_min_length: Optional[float] = Field(default=None, ge=0)

    p: DistributionModel
    q: DistributionModel
    kernel: KernelModel
    n_values: List[int] = Field(min_length=1)
    i_min: IMinModel
    threshold: ThresholdModel
    placement: PlacementModel = PlacementModel()

    @model_validator(mode="after")
    def _check_sizes(self):
        if any(n < 2 for n in self.n_values):
            raise ValueError("every n must be >= 2")
        if self.placement.rule == "fixed":
            for n in self.n_values:
                if self.placement.start + self.placement.length > n:
                    raise ValueError(f"fixed placement does not fit in n={n}")
        return self


@dataclass(slots=True, frozen=True)
class Configuration:
    n: int
    i_min: int
    t: float

    @property
    def key(self) -> Tuple[int, int, float]:
        return self.n, self.i_min, self.t


def _thresholds(plan: ExperimentPlan, n: int) -> List[float]:
    rule = plan.threshold
    if rule.mode == "fixed":
        return list(rule.t) if isinstance(rule.t, list) else [rule.t]
    if rule.mode == "decaying":
        return [threshold_decaying(n, scale=rule.scale, exponent=rule.exponent)]

    mmd2 = rule.mmd2
    if mmd2 is None:
        mmd2 = population_mmd2(plan.p.to_spec(), plan.q.to_spec(), plan.kernel.to_kernel(), rng_seed=plan.seed)
        logger.info("plan %s: MMD^2[p, q] = %.6g", plan.name, mmd2)
    return [threshold_known(mmd2, rule.delta)]


def scan_config(plan: ExperimentPlan, cfg: Configuration) -> TestConfig:
    """The scan parameters of one sweep point."""
    config = TestConfig(
        i_min=cfg.i_min,
        threshold=FixedThreshold(cfg.t),
        eta=plan.eta,
        algorithm=plan.algorithm,
        t_prime=plan.t_prime,
        delta_alg=plan.delta_alg,
        levels=plan.levels,
        extension_min_length=plan.extension_min_length,
    )
    if plan.algorithm == "multiscale" and plan.t_prime is not None and not plan.t_prime < cfg.t:
        raise PlanError(f"plan {plan.name}: t_prime={plan.t_prime} must be below t={cfg.t:.6g} (n={cfg.n})")
    return config


def configurations(plan: ExperimentPlan) -> List[Configuration]:
    """
    Sweep points in plan order: n, then t, then I_min. Every point is checked
    against the scan parameters here, so a bad plan fails before any trial runs.
    """
    try:
        configs = [
            Configuration(n, i_min, t)
            for n in plan.n_values
            for t in _thresholds(plan, n)
            for i_min in plan.i_min.resolve(n)
        ]
        for cfg in configs:
            scan_config(plan, cfg)
        return configs
    except PlanError:
        raise
    except LineScanError as e:
        raise PlanError(f"plan {plan.name}: {e.message}") from e


def parse_plan(data: dict) -> ExperimentPlan:
    try:
        return ExperimentPlan.model_validate(data)
    except ValidationError as e:
        raise PlanError(f"invalid experiment plan: {e}") from e


def load_plan(path: str | Path) -> ExperimentPlan:
    path = Path(path)
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError as e:
        raise PlanError(f"plan file not found: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise PlanError(f"{path}: {e}") from e
    return parse_plan(data)


def with_seed(plan: ExperimentPlan, seed: int | None = None) -> ExperimentPlan:
    """
    Plan with a concrete seed: `seed` if given, else the plan's own, else
    fresh OS entropy (log or echo plan.seed to replay the run).
    """
    if seed is None:
        seed = plan.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
        logger.info("plan %s: no seed given, using %d", plan.name, seed)
    return plan.model_copy(update={"seed": seed})
