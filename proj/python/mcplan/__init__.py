"""Mixed-criticality mission planning engine (pybind11 bindings)."""

from ._mcplan import (
    Action,
    MissionResult,
    NoFeasiblePlanError,
    Plan,
    PlanStep,
    Scenario,
    ScenarioParseError,
    generate_scenario,
    objective_value,
    plan_mission,
    run_batch,
    run_mission,
)

__all__ = [
    "Action",
    "MissionResult",
    "NoFeasiblePlanError",
    "Plan",
    "PlanStep",
    "Scenario",
    "ScenarioParseError",
    "generate_scenario",
    "objective_value",
    "plan_mission",
    "run_batch",
    "run_mission",
]
