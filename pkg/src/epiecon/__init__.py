"""Coupled agent-level epidemic / two-region input-output economy simulator."""

from .coupling import FearParams, InterventionTimeline, behavior_change
from .econ import EconParams
from .econio import MakeUse, TwoRegionIO, make_use_to_industry, regionalize
from .epidemic import EpiParams
from .population import PopulationConfig, build_population, generate_population
from .simulation import ScenarioConfig, Simulation, build_world, run_scenario

__version__ = "0.1.0"

__all__ = [
    "FearParams",
    "InterventionTimeline",
    "behavior_change",
    "EconParams",
    "MakeUse",
    "TwoRegionIO",
    "make_use_to_industry",
    "regionalize",
    "EpiParams",
    "PopulationConfig",
    "build_population",
    "generate_population",
    "ScenarioConfig",
    "Simulation",
    "build_world",
    "run_scenario",
    "__version__",
]
