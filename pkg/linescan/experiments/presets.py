# experiments/presets.py
from __future__ import annotations

import tomllib
from importlib import resources
from typing import List

from linescan.experiments.plans import ExperimentPlan, parse_plan
from linescan.utils.errors import PlanError

_PACKAGE = "linescan.experiments"
_FOLDER = "preset_plans"


def preset_names() -> List[str]:
    folder = resources.files(_PACKAGE).joinpath(_FOLDER)
    return sorted(entry.name[:-5] for entry in folder.iterdir() if entry.name.endswith(".toml"))


def preset_plan(name: str) -> ExperimentPlan:
    """Built-in plan for one of the numerical tests (test1 .. test5, test5-known)."""
    entry = resources.files(_PACKAGE).joinpath(_FOLDER, f"{name}.toml")
    if not entry.is_file():
        raise PlanError(f"unknown preset {name!r}; choose from {', '.join(preset_names())}")
    return parse_plan(tomllib.loads(entry.read_text(encoding="utf-8")))
