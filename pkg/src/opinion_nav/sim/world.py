"""World state and the per-step update.

A step runs three phases. Observe: focal-human selection from the current
geometry, hard resets (no focal -> robot opinion and attention zeroed; a
reactive human that cannot see the robot is reset the same way), and the
quasi-static attention display. This is the state that gets recorded or
broadcast. Command: scripted pedestrians refresh the heading they will hold
for the upcoming step (the realtime service applies client input at the same
point). Advance: one RK4 step of the coupled equations of motion. Within a
step the focal index and every scripted or externally commanded heading are
frozen, so those agents advance in exact straight lines over the step.
"""

from dataclasses import dataclass
from math import atan2, cos, pi, sin, tanh
from typing import List, Optional, Tuple

from ..core.dynamics import (attention_hill, attention_ode_rhs, opinion_rhs,
                             proxy_opinion)
from ..core.geometry import geometry_tuple, wrap_angle
from ..core.params import ExponentialAttention, HillAttention
from ..errors import NumericalBlowupError
from .integrator import rk4_step
from .scenario import (ExternalPolicy, HumanSpec, ReactivePolicy, Scenario,
                       ScriptedPolicy)

_HALF_PI = pi / 2


@dataclass
class AgentState:
    """Kinematic and opinion state of one agent."""

    x: float
    y: float
    theta: float
    speed: float
    z: float = 0.0
    u: float = 0.0

    def pose(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.theta)

    def copy(self) -> "AgentState":
        return AgentState(self.x, self.y, self.theta, self.speed,
                          self.z, self.u)


@dataclass
class World:
    """Self-contained simulation state at one instant."""

    t: float
    robot: AgentState
    humans: List[AgentState]
    focal: Optional[int] = None
    step_index: int = 0

    def copy(self) -> "World":
        return World(self.t, self.robot.copy(),
                     [h.copy() for h in self.humans], self.focal,
                     self.step_index)


def scripted_heading(spec: HumanSpec, x: float, y: float) -> float:
    """Heading a scripted pedestrian holds from position (x, y)."""
    policy = spec.policy
    base = atan2(spec.goal[1] - spec.start.y, spec.goal[0] - spec.start.x)
    if policy.prompt == "straight":
        return base
    # lateral offset from the start->goal line, positive to the travel left
    lat = (cos(base) * (y - spec.start.y) - sin(base) * (x - spec.start.x))
    if abs(lat) > policy.lane_width:
        return base
    sign = 1.0 if policy.prompt == "bear_left" else -1.0
    return wrap_angle(base + sign * policy.bear_offset)


def init_world(scenario: Scenario, rng=None) -> World:
    """Build the initial world; rng supplies the robot z perturbation."""
    if scenario.robot_z0 is not None:
        z0 = scenario.robot_z0
    elif rng is not None and scenario.z_noise_std > 0.0:
        z0 = float(rng.normal(0.0, scenario.z_noise_std))
    else:
        z0 = 0.0
    robot = AgentState(scenario.robot.start.x, scenario.robot.start.y,
                       scenario.robot.start.theta, scenario.robot.speed,
                       z=z0, u=0.0)
    humans = []
    for spec in scenario.humans:
        state = AgentState(spec.start.x, spec.start.y, spec.start.theta,
                           spec.speed)
        if isinstance(spec.policy, ScriptedPolicy):
            state.theta = scripted_heading(spec, state.x, state.y)
        elif isinstance(spec.policy, ReactivePolicy):
            state.z = spec.policy.z0
        elif isinstance(spec.policy, ExternalPolicy):
            state.speed = 0.0  # waits for a command
        humans.append(state)
    return World(t=0.0, robot=robot, humans=humans)


def _is_candidate(chi, eta_r, eta_h, scenario) -> bool:
    return (chi <= scenario.detection_range
            and abs(eta_r) <= scenario.fov_half_angle
            and -_HALF_PI < eta_h < _HALF_PI)


def _select(world: World, scenario: Scenario):
    """(focal index, observation tuple) or (None, None)."""
    robot = world.robot
    best = None
    best_obs = None
    best_score = float("inf")
    for j, human in enumerate(world.humans):
        obs = geometry_tuple(robot.x, robot.y, robot.theta,
                             human.x, human.y, human.theta,
                             scenario.robot.goal[0], scenario.robot.goal[1])
        chi, eta_r, eta_h, _, kappa = obs
        if not _is_candidate(chi, eta_r, eta_h, scenario):
            continue
        score = chi / kappa
        if score < best_score:
            best, best_obs, best_score = j, obs, score
    return best, best_obs


def select_focal_human(world: World, scenario: Scenario) -> Optional[int]:
    """Index of the human the robot attends to, or None.

    Candidates must be within detection range, inside the field of view, and
    closing (|eta_h| < pi/2). The winner minimizes chi/kappa, a time-to-
    contact surrogate; ties keep the lowest index.
    """
    return _select(world, scenario)[0]


@dataclass
class StepPlan:
    """Frozen per-step decisions: focal index and reactive visibility."""

    focal: Optional[int]
    detected: Tuple[bool, ...] = ()


def observe_step(world: World, scenario: Scenario) -> StepPlan:
    """Select the focal human and apply resets; mutates world.

    Brings the robot's displayed attention up to date for quasi-static laws
    and zeroes z and u where the reset rule demands it. The world after this
    call is what gets recorded or broadcast for the current time.
    """
    focal, obs = _select(world, scenario)
    world.focal = focal
    robot = world.robot
    law = scenario.robot.params.attention
    if focal is None:
        robot.z = 0.0
        robot.u = 0.0
    elif isinstance(law, HillAttention):
        robot.u = attention_hill(obs[4], obs[0], law)
    detected = []
    for spec, state in zip(scenario.humans, world.humans):
        if isinstance(spec.policy, ReactivePolicy):
            h_obs = geometry_tuple(state.x, state.y, state.theta,
                                   robot.x, robot.y, robot.theta,
                                   spec.goal[0], spec.goal[1])
            seen = _is_candidate(h_obs[0], h_obs[1], h_obs[2], scenario)
            if not seen:
                state.z = 0.0
                state.u = 0.0
            elif isinstance(spec.policy.params.attention, HillAttention):
                state.u = attention_hill(h_obs[4], h_obs[0],
                                         spec.policy.params.attention)
            detected.append(seen)
        else:
            detected.append(False)
    return StepPlan(focal=focal, detected=tuple(detected))


def command_step(world: World, scenario: Scenario) -> None:
    """Refresh scripted headings for the upcoming step; mutates world.

    Runs after the observe phase (and after any recording), immediately
    before advancing; the realtime service applies external client commands
    at the same point in the tick.
    """
    for spec, state in zip(scenario.humans, world.humans):
        if isinstance(spec.policy, ScriptedPolicy):
            state.theta = scripted_heading(spec, state.x, state.y)


def _component_name(index: int, scenario: Scenario) -> str:
    names = ["robot.x", "robot.y", "robot.theta", "robot.z"]
    if isinstance(scenario.robot.params.attention, ExponentialAttention):
        names.append("robot.u")
    for i, spec in enumerate(scenario.humans):
        if isinstance(spec.policy, ReactivePolicy):
            names += [f"humans[{i}].x", f"humans[{i}].y",
                      f"humans[{i}].theta", f"humans[{i}].z"]
            if isinstance(spec.policy.params.attention, ExponentialAttention):
                names.append(f"humans[{i}].u")
        else:
            names += [f"humans[{i}].x", f"humans[{i}].y"]
    return names[index] if 0 <= index < len(names) else f"y[{index}]"


def advance(world: World, scenario: Scenario, plan: StepPlan) -> World:
    """One RK4 step of size scenario.dt; returns the new world."""
    dt = scenario.dt
    robot = world.robot
    params = scenario.robot.params
    law = params.attention
    robot_ode = isinstance(law, ExponentialAttention)
    gx, gy = scenario.robot.goal
    eta_cap = scenario.eta_cap
    v_r = robot.speed

    y0 = [robot.x, robot.y, robot.theta, robot.z]
    if robot_ode:
        y0.append(robot.u)

    # per-human vector layout: (offset, mode, ...) built once per step
    plans = []
    focal_entry = None
    for i, (spec, state) in enumerate(zip(scenario.humans, world.humans)):
        off = len(y0)
        if isinstance(spec.policy, ReactivePolicy):
            hp = spec.policy.params
            h_ode = isinstance(hp.attention, ExponentialAttention)
            y0 += [state.x, state.y, state.theta, state.z]
            if h_ode:
                y0.append(state.u)
            entry = ("reactive", off, state.speed, hp, h_ode,
                     spec.goal[0], spec.goal[1], plan.detected[i])
        else:
            y0 += [state.x, state.y]
            entry = ("fixed", off, state.speed, state.theta)
        plans.append(entry)
        if plan.focal == i:
            focal_entry = entry

    robot_u_hill = robot.u  # value frozen only if no focal; else recomputed

    def rhs(y):
        out = [0.0] * len(y)
        rx, ry, rtheta, rz = y[0], y[1], y[2], y[3]
        ru = y[4] if robot_ode else 0.0
        out[0] = v_r * cos(rtheta)
        out[1] = v_r * sin(rtheta)
        if focal_entry is None:
            # no focal human: opinion frozen at zero, steer to goal
            out[2] = params.k * sin(atan2(gy - ry, gx - rx) - rtheta)
        else:
            if focal_entry[0] == "fixed":
                fo = focal_entry[1]
                fx, fy, ftheta = y[fo], y[fo + 1], focal_entry[3]
            else:
                fo = focal_entry[1]
                fx, fy, ftheta = y[fo], y[fo + 1], y[fo + 2]
            chi, eta_r, eta_h, phi_r, kappa = geometry_tuple(
                rx, ry, rtheta, fx, fy, ftheta, gx, gy)
            proxy = proxy_opinion(eta_h, eta_cap)
            u = ru if robot_ode else attention_hill(kappa, chi, law)
            out[3] = opinion_rhs(rz, u, proxy, params)
            out[2] = params.k * sin(params.beta * tanh(rz) + phi_r)
            if robot_ode:
                out[4] = attention_ode_rhs(ru, cos(eta_r), chi, law)
        for entry in plans:
            if entry[0] == "fixed":
                _, off, speed, theta = entry
                out[off] = speed * cos(theta)
                out[off + 1] = speed * sin(theta)
            else:
                (_, off, speed, hp, h_ode, hgx, hgy, seen) = entry
                hx, hy, htheta = y[off], y[off + 1], y[off + 2]
                hz = y[off + 3]
                out[off] = speed * cos(htheta)
                out[off + 1] = speed * sin(htheta)
                if not seen:
                    out[off + 2] = hp.k * sin(atan2(hgy - hy, hgx - hx)
                                              - htheta)
                    continue
                chi, eta_r, eta_h, phi_r, kappa = geometry_tuple(
                    hx, hy, htheta, rx, ry, rtheta, hgx, hgy)
                proxy = proxy_opinion(eta_h, eta_cap)
                if h_ode:
                    hu = y[off + 4]
                    out[off + 4] = attention_ode_rhs(hu, cos(eta_r), chi,
                                                     hp.attention)
                else:
                    hu = attention_hill(kappa, chi, hp.attention)
                out[off + 3] = opinion_rhs(hz, hu, proxy, hp)
                out[off + 2] = hp.k * sin(hp.beta * tanh(hz) + phi_r)
        return out

    try:
        y1 = rk4_step(y0, rhs, dt)
    except NumericalBlowupError as exc:
        if isinstance(exc.component, int):
            name = _component_name(exc.component, scenario)
            raise NumericalBlowupError(
                f"non-finite derivative for component '{name}'",
                component=name) from exc
        raise

    new_robot = AgentState(y1[0], y1[1], wrap_angle(y1[2]), v_r, y1[3],
                           y1[4] if robot_ode else robot_u_hill)
    new_humans = []
    for entry, state in zip(plans, world.humans):
        if entry[0] == "fixed":
            off = entry[1]
            new_humans.append(AgentState(y1[off], y1[off + 1], state.theta,
                                         state.speed, state.z, state.u))
        else:
            off, h_ode = entry[1], entry[4]
            new_humans.append(AgentState(
                y1[off], y1[off + 1], wrap_angle(y1[off + 2]), state.speed,
                y1[off + 3], y1[off + 4] if h_ode else state.u))
    return World(t=(world.step_index + 1) * dt, robot=new_robot,
                 humans=new_humans, focal=plan.focal,
                 step_index=world.step_index + 1)


def step_world(world: World, scenario: Scenario) -> World:
    """Advance one full step: observe, command, then RK4.

    world is mutated by the observe and command phases; the returned World is
    a fresh value.
    """
    plan = observe_step(world, scenario)
    command_step(world, scenario)
    return advance(world, scenario, plan)
