# intervals/candidates.py
from __future__ import annotations

from typing import Iterator

from linescan.models.interval import Interval
from linescan.utils.errors import InvalidArgumentError


def _check(n: int, i_min: int) -> None:
    if i_min < 2:
        raise InvalidArgumentError(f"i_min must be >= 2 (the estimator needs two samples), got {i_min}")
    if i_min > n:
        raise InvalidArgumentError(f"i_min={i_min} exceeds network size n={n}")


def candidate_count(n: int, i_min: int) -> int:
    """sum_{L = i_min..n} (n - L + 1)."""
    _check(n, i_min)
    m = n - i_min + 1
    return m * (m + 1) // 2


def candidate_intervals(n: int, i_min: int) -> Iterator[Interval]:
    """Lazily yield every interval with |I| >= i_min, ordered by (length, start)."""
    _check(n, i_min)

    def _walk() -> Iterator[Interval]:
        for length in range(i_min, n + 1):
            for start in range(0, n - length + 1):
                yield Interval(start, length)

    return _walk()
