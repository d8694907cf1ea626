# intervals/extensions.py
"""
l-level extensions of a dyadic interval I_{j,k}.

Seeds: I_{j,k} itself and, when k is odd, I_{j,k} joined with I_{j,k+1}.
At round q = 1..l a block of length 2^(j-q) may be attached flush to the
left end, the right end, both, or neither. Rounds whose block would be
shorter than one node are skipped. Members are clipped to [0, n).
"""
from __future__ import annotations

from functools import lru_cache
from typing import FrozenSet, Iterable, List, Set, Tuple

from linescan.models.interval import DyadicGrid, ExtensionSet, Interval
from linescan.utils.errors import InvalidArgumentError


@lru_cache(maxsize=1024)
def _extension_offsets(j: int, level: int) -> FrozenSet[Tuple[int, int]]:
    """(left growth, right growth) pairs reachable from a seed of base length 2^j."""
    offsets = {(0, 0)}
    for q in range(1, level + 1):
        if q > j:
            break
        block = 1 << (j - q)
        offsets = {
            (left + dl, right + dr)
            for left, right in offsets
            for dl in (0, block)
            for dr in (0, block)
        }
    return frozenset(offsets)


def _seeds(base: Interval, j: int, n: int) -> List[Interval]:
    size = 1 << j
    k = base.start // size
    seeds = [base]
    if k % 2 == 1 and base.stop < n:
        seeds.append(Interval(base.start, min(base.start + 2 * size, n) - base.start))
    return seeds


def _sorted(members: Iterable[Interval]) -> Tuple[Interval, ...]:
    return tuple(sorted(members, key=lambda iv: (iv.length, iv.start)))


def extensions(base: Interval, level: int, grid: DyadicGrid) -> ExtensionSet:
    """Every l-level extension of the dyadic interval `base`, base included."""
    if level < 0:
        raise InvalidArgumentError(f"extension level must be >= 0, got {level}")
    if not grid.is_dyadic(base):
        raise InvalidArgumentError(f"{base} is not a dyadic interval of the grid n={grid.n}")

    j = grid.level_of(base)
    offsets = _extension_offsets(j, level)
    members: Set[Interval] = set()
    for seed in _seeds(base, j, grid.n):
        for left, right in offsets:
            start = max(0, seed.start - left)
            stop = min(grid.n, seed.stop + right)
            members.add(Interval(start, stop - start))
    return ExtensionSet(base=base, level=level, members=_sorted(members))


def extension_union(grid: DyadicGrid, level: int, bases: Iterable[Interval] | None = None) -> Tuple[Interval, ...]:
    """Union of the extension families of `bases` (all dyadic intervals by default)."""
    members: Set[Interval] = set()
    for base in (grid.intervals if bases is None else bases):
        members.update(extensions(base, level, grid).members)
    return _sorted(members)
