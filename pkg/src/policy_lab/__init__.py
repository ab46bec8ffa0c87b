"""Policy intervention workbench.

Loads a baseline plastics mass-flow projection, executes lever scripts
written in a small intervention language against it year by year, and exposes
the results through a CLI, an HTTP service and a web interface.
"""

from ._version import __version__
from .engine import (
    EngineConfig,
    ScenarioResult,
    compare_scenarios,
    headline_metrics,
    normalize_eol,
    run_scenario,
    waste_from_consumption,
)
from .projection import (
    Attribute,
    ProjectionSeries,
    Region,
    Vocabulary,
    diff_series,
    load_baseline,
    load_vocabulary,
    serialize,
)
from .scenario import Lever, LeverInput, Scenario, check_scenario, load_scenario

__all__ = [
    "Attribute",
    "EngineConfig",
    "Lever",
    "LeverInput",
    "ProjectionSeries",
    "Region",
    "Scenario",
    "ScenarioResult",
    "Vocabulary",
    "__version__",
    "check_scenario",
    "compare_scenarios",
    "diff_series",
    "headline_metrics",
    "load_baseline",
    "load_scenario",
    "load_vocabulary",
    "normalize_eol",
    "run_scenario",
    "serialize",
    "waste_from_consumption",
]
