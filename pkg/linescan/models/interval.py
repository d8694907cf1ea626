# models/interval.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterator, Tuple

from linescan.utils.errors import BoundsError, InvalidArgumentError


@dataclass(slots=True, frozen=True)
class Interval:
    """Half-open run of consecutive nodes [start, start + length)."""
    start: int
    length: int

    def __post_init__(self):
        if self.start < 0:
            raise InvalidArgumentError(f"start must be >= 0, got {self.start}")
        if self.length < 1:
            raise InvalidArgumentError(f"length must be >= 1, got {self.length}")

    @property
    def stop(self) -> int:
        return self.start + self.length

    def contains(self, other: "Interval") -> bool:
        return self.start <= other.start and other.stop <= self.stop

    def overlaps(self, other: "Interval") -> bool:
        return self.start < other.stop and other.start < self.stop

    def check_within(self, n: int) -> None:
        if self.stop > n:
            raise BoundsError(f"interval [{self.start}, {self.stop}) exceeds network size {n}")

    def to_dict(self) -> dict:
        return {"start": self.start, "length": self.length}


@dataclass(slots=True, frozen=True, kw_only=True)
class DyadicGrid:
    """
    Dyadic intervals I_{j,k} = {k 2^j, ..., (k+1) 2^j - 1} of the padded grid
    2^depth >= n, clipped to [0, n). levels[j] holds level j in offset order;
    a clipped interval already present at a lower level is not repeated.
    """
    n: int
    depth: int
    levels: Tuple[Tuple[Interval, ...], ...]

    @property
    def intervals(self) -> Tuple[Interval, ...]:
        return tuple(iv for level in self.levels for iv in level)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return sum(len(level) for level in self.levels)

    def level_of(self, interval: Interval) -> int | None:
        """Lowest level j at which `interval` is a (possibly clipped) dyadic interval."""
        for j in range(self.depth + 1):
            size = 1 << j
            if interval.start % size == 0 and min(interval.start + size, self.n) == interval.stop:
                return j
        return None

    def is_dyadic(self, interval: Interval) -> bool:
        return interval.stop <= self.n and self.level_of(interval) is not None


@dataclass(slots=True, frozen=True, kw_only=True)
class ExtensionSet:
    """All l-level extensions of one dyadic base, base included."""
    base: Interval
    level: int
    members: Tuple[Interval, ...]

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)
