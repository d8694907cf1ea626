from .distributions import make_rng, population_mmd2, sample
from .planting import plant_instance, uniform_anomaly
from .plans import ExperimentPlan, configurations, load_plan, parse_plan, with_seed
from .presets import preset_names, preset_plan
from .runner import crossing_point, estimates_frame, first_n_below, run_plan

__all__ = [
    "make_rng",
    "population_mmd2",
    "sample",
    "plant_instance",
    "uniform_anomaly",
    "ExperimentPlan",
    "configurations",
    "load_plan",
    "parse_plan",
    "with_seed",
    "preset_names",
    "preset_plan",
    "crossing_point",
    "estimates_frame",
    "first_n_below",
    "run_plan",
]
