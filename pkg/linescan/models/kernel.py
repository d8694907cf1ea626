# models/kernel.py
from __future__ import annotations
from dataclasses import dataclass
from math import isfinite
from typing import Literal

import numpy as np

from linescan.utils.errors import InvalidArgumentError

KernelKind = Literal["gaussian", "laplace"]


@dataclass(slots=True, frozen=True, kw_only=True)
class Kernel:
    """
    Bounded, symmetric similarity on scalar observations.
    - gaussian: k(x, y) = K exp(-(x - y)^2 / (2 sigma^2))
    - laplace:  k(x, y) = K exp(-|x - y| / (2 sigma))
    `bound` is K in 0 <= k <= K = k(x, x); both kernels default to K = 1.
    """
    kind: KernelKind
    bandwidth: float
    bound: float = 1.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "laplace"):
            raise InvalidArgumentError(f"Unsupported kernel kind: {self.kind!r}")
        if not (isfinite(self.bandwidth) and self.bandwidth > 0):
            raise InvalidArgumentError(f"bandwidth must be a positive finite number, got {self.bandwidth!r}")
        if not (isfinite(self.bound) and self.bound > 0):
            raise InvalidArgumentError(f"bound must be a positive finite number, got {self.bound!r}")

    @classmethod
    def from_name(cls, kind: str, sigma: float) -> "Kernel":
        return cls(kind=(kind or "").strip().lower(), bandwidth=float(sigma))

    def gram(self, xs, ys) -> np.ndarray:
        """Kernel block k(xs[i], ys[j]) with shape (len(xs), len(ys))."""
        xs = np.asarray(xs, dtype=float).reshape(-1, 1)
        ys = np.asarray(ys, dtype=float).reshape(1, -1)
        diff = xs - ys
        if self.kind == "gaussian":
            return self.bound * np.exp(-(diff * diff) / (2.0 * self.bandwidth ** 2))
        return self.bound * np.exp(-np.abs(diff) / (2.0 * self.bandwidth))

    def diagonal(self, xs) -> np.ndarray:
        """k(x, x) for every x; equals `bound` for the built-in kernels."""
        return np.full(np.asarray(xs).shape[0], self.bound, dtype=float)
