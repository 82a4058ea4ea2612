"""LEO handover planning: association planning, baselines and latency models."""

from ._core import (  # noqa: F401
    Error,
    InfeasibleError,
    Pipeline,
    Scenario,
    ValidationError,
    __version__,
    allocate_bisection,
    allocate_closed_form,
    cmd_latency,
    cmd_oracle_check,
    cmd_plan,
    dmax_mb,
    elevation_deg,
    load_scenario,
    scenario_from_json,
    utility,
    utility_derivative,
)
