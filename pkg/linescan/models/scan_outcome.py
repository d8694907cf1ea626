# models/scan_outcome.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional

from linescan.models.interval import Interval
from linescan.utils.errors import InvalidArgumentError

Decision = Literal["H0", "H1"]
Trigger = Literal["cardinality", "prescan_max", "extension_max", "exhaustive_max", "none"]


@dataclass(slots=True, frozen=True, kw_only=True)
class ScanOutcome:
    """
    Result of one scan.
    - best_interval / best_statistic: argmax over everything evaluated,
      ties broken by (shorter, then leftmost). Diagnostic only.
    - evaluations: number of per-interval statistics computed.
    - trigger: which rule raised the alarm, "none" under H0.
    """
    decision: Decision
    best_interval: Optional[Interval]
    best_statistic: float
    evaluations: int
    trigger: Trigger
    threshold: float
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if (self.decision == "H1") != (self.trigger != "none"):
            raise InvalidArgumentError(f"decision {self.decision} inconsistent with trigger {self.trigger}")

    @property
    def alarm(self) -> bool:
        return self.decision == "H1"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "decision": self.decision,
            "best_interval": None if self.best_interval is None else self.best_interval.to_dict(),
            "best_statistic": self.best_statistic,
            "evaluations": self.evaluations,
            "trigger": self.trigger,
            "threshold": self.threshold,
            "diagnostics": dict(self.diagnostics),
        }
