"""Headless trial execution: seeded init, step loop, recorded series."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..errors import ScenarioError
from .metrics import (TrialMetrics, max_curvature, min_separation,
                      passed_left, path_length)
from .scenario import Scenario, validate_scenario
from .world import World, advance, command_step, init_world, observe_step

OUTCOME_REACHED = "reached"
OUTCOME_COLLISION = "collision"
OUTCOME_TIMEOUT = "timeout"


@dataclass
class AgentSeries:
    """Per-agent state samples, one row per recorded step."""

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    z: np.ndarray
    u: np.ndarray


@dataclass
class TrialResult:
    """Everything a trial produces."""

    scenario: Scenario
    outcome: str
    t: np.ndarray
    robot: AgentSeries
    humans: List[AgentSeries]
    focal: np.ndarray  # focal human index per sample, -1 when none
    metrics: TrialMetrics
    z0: float  # robot's initial opinion after perturbation


class Recorder:
    """Accumulates per-step world samples into arrays."""

    def __init__(self, n_humans: int):
        self.t = []
        self.focal = []
        self.robot = [[] for _ in range(5)]
        self.humans = [[[] for _ in range(5)] for _ in range(n_humans)]

    def add(self, world: World) -> None:
        self.t.append(world.t)
        self.focal.append(-1 if world.focal is None else world.focal)
        r = world.robot
        rows = self.robot
        rows[0].append(r.x)
        rows[1].append(r.y)
        rows[2].append(r.theta)
        rows[3].append(r.z)
        rows[4].append(r.u)
        for cols, h in zip(self.humans, world.humans):
            cols[0].append(h.x)
            cols[1].append(h.y)
            cols[2].append(h.theta)
            cols[3].append(h.z)
            cols[4].append(h.u)

    @staticmethod
    def _series(cols) -> AgentSeries:
        return AgentSeries(*(np.asarray(c, dtype=float) for c in cols))

    def freeze(self) -> Tuple[np.ndarray, AgentSeries, list, np.ndarray]:
        return (np.asarray(self.t, dtype=float), self._series(self.robot),
                [self._series(c) for c in self.humans],
                np.asarray(self.focal, dtype=int))


def check_terminal(world: World, scenario: Scenario,
                   n_steps: int) -> Optional[str]:
    """Outcome name if the trial ends at this world, else None.

    Goal arrival outranks collision when both hold at the same sample.
    """
    r = world.robot
    gx, gy = scenario.robot.goal
    if (r.x - gx) ** 2 + (r.y - gy) ** 2 <= scenario.goal_tolerance ** 2:
        return OUTCOME_REACHED
    limit = scenario.collision_radius ** 2
    for h in world.humans:
        if (r.x - h.x) ** 2 + (r.y - h.y) ** 2 < limit:
            return OUTCOME_COLLISION
    if world.step_index >= n_steps:
        return OUTCOME_TIMEOUT
    return None


def compute_metrics(t, robot: AgentSeries, humans, scenario: Scenario,
                    outcome: str) -> TrialMetrics:
    seps = tuple(min_separation(robot.x, robot.y, h.x, h.y) for h in humans)
    start = (scenario.robot.start.x, scenario.robot.start.y)
    sides = tuple(passed_left(robot.x, robot.y, h.x, h.y, start,
                              scenario.robot.goal) for h in humans)
    return TrialMetrics(
        path_length=path_length(robot.x, robot.y),
        max_curvature=max_curvature(robot.x, robot.y),
        min_separation=min(seps) if seps else float("inf"),
        min_separation_per_human=seps,
        time_to_goal=float(t[-1]) if outcome == OUTCOME_REACHED else None,
        passed_left=sides)


def run_trial(scenario: Scenario) -> TrialResult:
    """Run one deterministic trial to termination.

    Raises ScenarioError on invalid configuration and NumericalBlowupError if
    integration produces non-finite values. Identical scenarios (including
    seed) give bit-identical results.
    """
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioError(violations)
    rng = np.random.default_rng(scenario.seed)
    world = init_world(scenario, rng)
    z0 = world.robot.z
    n_steps = int(round(scenario.max_time / scenario.dt))
    recorder = Recorder(len(scenario.humans))
    while True:
        plan = observe_step(world, scenario)
        recorder.add(world)
        outcome = check_terminal(world, scenario, n_steps)
        if outcome is not None:
            break
        command_step(world, scenario)
        world = advance(world, scenario, plan)
    t, robot, humans, focal = recorder.freeze()
    metrics = compute_metrics(t, robot, humans, scenario, outcome)
    return TrialResult(scenario=scenario, outcome=outcome, t=t, robot=robot,
                       humans=humans, focal=focal, metrics=metrics, z0=z0)
