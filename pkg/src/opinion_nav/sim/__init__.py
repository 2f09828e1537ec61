"""Deterministic fixed-step simulator for opinion-driven navigation."""

from .export import (write_metrics_json, write_opinion_csv,
                     write_trajectory_csv)
from .integrator import rk4_step
from .metrics import (TrialMetrics, max_curvature, min_separation,
                      passed_left, path_length)
from .runner import (OUTCOME_COLLISION, OUTCOME_REACHED, OUTCOME_TIMEOUT,
                     AgentSeries, TrialResult, run_trial)
from .scenario import (ExternalPolicy, HumanSpec, Pose, ReactivePolicy,
                       RobotSpec, Scenario, ScriptedPolicy, load_scenario,
                       save_scenario, scenario_from_dict, scenario_to_dict,
                       validate_scenario, with_overrides)
from .world import (AgentState, StepPlan, World, advance, command_step,
                    init_world, observe_step, scripted_heading,
                    select_focal_human, step_world)

__all__ = [
    "AgentSeries", "AgentState", "ExternalPolicy", "HumanSpec",
    "OUTCOME_COLLISION", "OUTCOME_REACHED", "OUTCOME_TIMEOUT", "Pose",
    "ReactivePolicy", "RobotSpec", "Scenario", "ScriptedPolicy", "StepPlan",
    "TrialMetrics", "TrialResult", "World", "advance", "command_step",
    "init_world", "load_scenario", "max_curvature", "min_separation",
    "observe_step", "passed_left", "path_length", "rk4_step", "run_trial",
    "save_scenario", "scenario_from_dict", "scenario_to_dict",
    "scripted_heading", "select_focal_human", "step_world",
    "validate_scenario", "with_overrides", "write_metrics_json",
    "write_opinion_csv", "write_trajectory_csv",
]
