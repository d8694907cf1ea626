from .kernel import Kernel
from .samples import SampleSeries, GramSummaries
from .interval import Interval, DyadicGrid, ExtensionSet
from .test_config import TestConfig, FixedThreshold, KnownMMDThreshold, DecayingThreshold
from .scan_outcome import ScanOutcome
from .experiment import DistributionSpec, ErrorEstimate

__all__ = [
    "Kernel",
    "SampleSeries",
    "GramSummaries",
    "Interval",
    "DyadicGrid",
    "ExtensionSet",
    "TestConfig",
    "FixedThreshold",
    "KnownMMDThreshold",
    "DecayingThreshold",
    "ScanOutcome",
    "DistributionSpec",
    "ErrorEstimate",
]
