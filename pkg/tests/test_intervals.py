# tests/test_intervals.py

import pytest

from linescan.intervals import (
    candidate_count,
    candidate_intervals,
    dyadic_grid,
    extension_union,
    extensions,
    grid_depth,
    max_dyadic_within,
)
from linescan.models import Interval
from linescan.utils.errors import BoundsError, InvalidArgumentError


def all_intervals(n):
    return [Interval(s, L) for L in range(1, n + 1) for s in range(0, n - L + 1)]


# --- Interval ---

def test_interval_helpers():
    a, b = Interval(2, 5), Interval(4, 2)
    assert a.stop == 7
    assert a.contains(b) and not b.contains(a)
    assert a.overlaps(Interval(6, 3)) and not a.overlaps(Interval(7, 3))
    assert a.to_dict() == {"start": 2, "length": 5}
    with pytest.raises(BoundsError):
        a.check_within(6)


def test_interval_validation():
    with pytest.raises(InvalidArgumentError):
        Interval(-1, 3)
    with pytest.raises(InvalidArgumentError):
        Interval(0, 0)


# --- candidates ---

def test_candidate_count_and_order():
    assert candidate_count(10, 2) == 45
    assert candidate_count(10, 10) == 1
    got = list(candidate_intervals(6, 4))
    assert got == [Interval(0, 4), Interval(1, 4), Interval(2, 4), Interval(0, 5), Interval(1, 5), Interval(0, 6)]
    assert len(list(candidate_intervals(30, 7))) == candidate_count(30, 7)


def test_candidate_errors():
    with pytest.raises(InvalidArgumentError):
        candidate_count(10, 11)
    with pytest.raises(InvalidArgumentError):
        candidate_intervals(10, 1)


# --- dyadic grid ---

def test_grid_depth():
    assert grid_depth(2) == 1
    assert grid_depth(16) == 4
    assert grid_depth(17) == 5


def test_power_of_two_grid():
    grid = dyadic_grid(16)
    assert [len(level) for level in grid.levels] == [16, 8, 4, 2, 1]
    assert len(grid) == 31
    assert grid.levels[2][1] == Interval(4, 4)
    assert grid.is_dyadic(Interval(8, 8))
    assert not grid.is_dyadic(Interval(2, 4))
    assert grid.level_of(Interval(12, 4)) == 2


def test_padded_grid_is_clipped_and_deduplicated():
    grid = dyadic_grid(12)
    assert grid.depth == 4
    assert [len(level) for level in grid.levels] == [12, 6, 3, 1, 1]
    assert grid.levels[3] == (Interval(0, 8),)
    assert grid.levels[4] == (Interval(0, 12),)
    assert grid.level_of(Interval(8, 4)) == 2
    assert len(set(grid.intervals)) == len(grid)
    assert all(iv.stop <= 12 for iv in grid)


def test_grid_needs_two_nodes():
    with pytest.raises(InvalidArgumentError):
        dyadic_grid(1)


def test_max_dyadic_within_example():
    grid = dyadic_grid(16)
    assert max_dyadic_within(Interval(3, 6), grid) == Interval(4, 4)
    assert max_dyadic_within(Interval(5, 1), grid) == Interval(5, 1)
    assert max_dyadic_within(Interval(0, 16), grid) == Interval(0, 16)


@pytest.mark.parametrize("n", [16, 64])
def test_max_dyadic_within_quarter_ratio(n):
    grid = dyadic_grid(n)
    for iv in all_intervals(n):
        d = max_dyadic_within(iv, grid)
        assert iv.contains(d)
        assert grid.is_dyadic(d)
        assert 4 * d.length >= iv.length


# --- extensions ---

def test_even_base_level_zero_is_itself():
    grid = dyadic_grid(16)
    family = extensions(Interval(8, 4), 0, grid)
    assert family.members == (Interval(8, 4),)


def test_odd_base_adds_right_neighbour_seed():
    grid = dyadic_grid(16)
    family = extensions(Interval(4, 4), 0, grid)
    assert family.members == (Interval(4, 4), Interval(4, 8))


def test_one_level_extension():
    grid = dyadic_grid(16)
    family = extensions(Interval(8, 4), 1, grid)
    assert set(family) == {Interval(8, 4), Interval(6, 6), Interval(8, 6), Interval(6, 8)}
    assert list(family) == sorted(family, key=lambda iv: (iv.length, iv.start))


def test_extensions_are_clipped_to_the_line():
    grid = dyadic_grid(16)
    family = extensions(Interval(0, 4), 2, grid)
    assert all(iv.start == 0 and iv.stop <= 16 for iv in family)
    assert Interval(0, 7) in family.members


def test_extension_errors():
    grid = dyadic_grid(16)
    with pytest.raises(InvalidArgumentError):
        extensions(Interval(2, 4), 1, grid)
    with pytest.raises(InvalidArgumentError):
        extensions(Interval(0, 4), -1, grid)


@pytest.mark.parametrize("n", [16, 64])
@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_extension_set_size_bound(n, level):
    assert len(extension_union(dyadic_grid(n), level)) <= n * 4 ** (level + 1)


@pytest.mark.parametrize("n", [16, 64])
@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_extensions_of_the_max_dyadic_approximate_every_interval(n, level):
    grid = dyadic_grid(n)
    families = {}
    for iv in all_intervals(n):
        d = max_dyadic_within(iv, grid)
        if d not in families:
            families[d] = extensions(d, level, grid).members
        inside = [J.length for J in families[d] if iv.contains(J)]
        assert inside, f"no extension of {d} fits in {iv}"
        assert iv.length - max(inside) <= d.length / 2 ** (level - 1)
