from .candidates import candidate_count, candidate_intervals
from .dyadic import dyadic_grid, grid_depth, max_dyadic_within
from .extensions import extension_union, extensions

__all__ = [
    "candidate_count",
    "candidate_intervals",
    "dyadic_grid",
    "grid_depth",
    "max_dyadic_within",
    "extensions",
    "extension_union",
]
