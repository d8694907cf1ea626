from .scan import scan, scan_exhaustive, scan_multiscale
from .thresholds import (
    i_min_bound,
    threshold_decaying,
    threshold_from_config,
    threshold_known,
)

__all__ = [
    "scan",
    "scan_exhaustive",
    "scan_multiscale",
    "i_min_bound",
    "threshold_decaying",
    "threshold_from_config",
    "threshold_known",
]
