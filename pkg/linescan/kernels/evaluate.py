# kernels/evaluate.py
from __future__ import annotations
from math import exp, isfinite

from linescan.models.kernel import Kernel
from linescan.utils.errors import InvalidArgumentError


def evaluate(kernel: Kernel, x: float, y: float) -> float:
    """Scalar k(x, y); symmetric, in [0, kernel.bound]."""
    if not (isfinite(x) and isfinite(y)):
        raise InvalidArgumentError(f"kernel inputs must be finite, got ({x!r}, {y!r})")

    # abs(x - y) == abs(y - x) bitwise
    d = abs(x - y)
    if kernel.kind == "gaussian":
        return kernel.bound * exp(-(d * d) / (2.0 * kernel.bandwidth ** 2))
    return kernel.bound * exp(-d / (2.0 * kernel.bandwidth))
