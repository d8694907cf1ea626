# models/experiment.py
from __future__ import annotations
from dataclasses import dataclass
from math import isclose, isfinite, sqrt
from typing import Literal, Tuple

from linescan.utils.errors import InvalidArgumentError

DistributionKind = Literal["gaussian", "gaussian_mixture", "laplace_mixture"]
Component = Tuple[float, float, float]  # (weight, mean, variance)


@dataclass(slots=True, frozen=True, kw_only=True)
class DistributionSpec:
    """
    One of the three sample families used by the experiments.
    A plain gaussian is stored as a single-component mixture. Variances are
    variances (N(0, 0.5) has standard deviation sqrt(0.5)); a Laplace
    component of variance v has scale b = sqrt(v / 2).
    """
    kind: DistributionKind
    components: Tuple[Component, ...]

    def __post_init__(self):
        if self.kind not in ("gaussian", "gaussian_mixture", "laplace_mixture"):
            raise InvalidArgumentError(f"Unsupported distribution kind: {self.kind!r}")
        comps = tuple((float(w), float(m), float(v)) for w, m, v in self.components)
        if not comps:
            raise InvalidArgumentError("a distribution needs at least one component")
        if self.kind == "gaussian" and len(comps) != 1:
            raise InvalidArgumentError("a gaussian has exactly one component")
        for w, m, v in comps:
            if not (w > 0 and isfinite(w)):
                raise InvalidArgumentError(f"component weights must be positive, got {w!r}")
            if not isfinite(m):
                raise InvalidArgumentError(f"component means must be finite, got {m!r}")
            if not (v > 0 and isfinite(v)):
                raise InvalidArgumentError(f"component variances must be positive, got {v!r}")
        if not isclose(sum(w for w, _, _ in comps), 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise InvalidArgumentError("component weights must sum to 1")
        object.__setattr__(self, "components", comps)

    @classmethod
    def gaussian(cls, mean: float, variance: float) -> "DistributionSpec":
        return cls(kind="gaussian", components=((1.0, mean, variance),))

    @classmethod
    def gaussian_mixture(cls, components) -> "DistributionSpec":
        return cls(kind="gaussian_mixture", components=tuple(components))

    @classmethod
    def laplace_mixture(cls, components) -> "DistributionSpec":
        return cls(kind="laplace_mixture", components=tuple(components))

    @property
    def is_gaussian_family(self) -> bool:
        return self.kind in ("gaussian", "gaussian_mixture")

    def mean(self) -> float:
        return sum(w * m for w, m, _ in self.components)

    def variance(self) -> float:
        mu = self.mean()
        return sum(w * (v + m * m) for w, m, v in self.components) - mu * mu


@dataclass(slots=True, frozen=True, kw_only=True)
class ErrorEstimate:
    """
    Monte Carlo error rates of one configuration.
    p_h0_error = P(H1 | H0) (false alarm), p_h1_error = P(H0 | H1) (miss),
    p_e is their average; std_error is the binomial standard error of p_e.
    """
    n: int
    i_min: int
    t: float
    p_h0_error: float
    p_h1_error: float
    trials: int
    failures: int = 0

    def __post_init__(self):
        for name in ("p_h0_error", "p_h1_error"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise InvalidArgumentError(f"{name} must lie in [0, 1], got {value!r}")
        if self.trials < 1:
            raise InvalidArgumentError("an estimate needs at least one trial")

    @property
    def p_e(self) -> float:
        return 0.5 * (self.p_h0_error + self.p_h1_error)

    @property
    def std_error(self) -> float:
        var0 = self.p_h0_error * (1.0 - self.p_h0_error) / self.trials
        var1 = self.p_h1_error * (1.0 - self.p_h1_error) / self.trials
        return 0.5 * sqrt(var0 + var1)

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "i_min": self.i_min,
            "t": self.t,
            "p_e": self.p_e,
            "p_h0_err": self.p_h0_error,
            "p_h1_err": self.p_h1_error,
            "std_err": self.std_error,
            "trials": self.trials,
        }
