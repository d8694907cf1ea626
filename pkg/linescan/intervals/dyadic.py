# intervals/dyadic.py
from __future__ import annotations

from typing import List, Set, Tuple

from linescan.models.interval import DyadicGrid, Interval
from linescan.utils.errors import InvalidArgumentError


def grid_depth(n: int) -> int:
    """J = ceil(log2 n)."""
    return (n - 1).bit_length()


def dyadic_grid(n: int) -> DyadicGrid:
    """
    All dyadic intervals of the padded grid 2^J >= n, clipped to [0, n).
    Ordered by level, then offset.
    """
    if n < 2:
        raise InvalidArgumentError(f"a dyadic grid needs n >= 2, got {n}")

    depth = grid_depth(n)
    seen: Set[Interval] = set()
    levels: List[Tuple[Interval, ...]] = []
    for j in range(depth + 1):
        size = 1 << j
        level = []
        for start in range(0, n, size):
            iv = Interval(start, min(start + size, n) - start)
            if iv in seen:
                continue
            seen.add(iv)
            level.append(iv)
        levels.append(tuple(level))
    return DyadicGrid(n=n, depth=depth, levels=tuple(levels))


def max_dyadic_within(interval: Interval, grid: DyadicGrid) -> Interval:
    """
    Largest dyadic interval contained in `interval`, ties broken by smallest
    start. On a power-of-two grid the result is at least |interval| / 4 long.
    """
    interval.check_within(grid.n)

    best: Interval | None = None
    for j in range(grid.depth + 1):
        size = 1 << j
        # first aligned offset at this level; later ones at the same level are never longer
        start = -(-interval.start // size) * size
        if start >= grid.n:
            continue
        stop = min(start + size, grid.n)
        if stop > interval.stop:
            continue
        candidate = Interval(start, stop - start)
        if best is None or (candidate.length, -candidate.start) > (best.length, -best.start):
            best = candidate

    if best is None:
        # unreachable for length >= 1: every single node is a level-0 dyadic interval
        raise InvalidArgumentError(f"no dyadic interval inside {interval}")
    return best
