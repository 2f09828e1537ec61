"""Scenario configuration: dataclasses, validation, JSON round-trip.

The on-disk format is documented in docs/scenario_schema.md. Parsing reports
every problem it can find (with a JSON-path-like location) instead of failing
on the first one.
"""

import json
from dataclasses import asdict, dataclass, replace
from math import pi
from typing import Optional, Tuple, Union

from ..core.params import (AttentionLaw, ExponentialAttention, HillAttention,
                           OpinionParams)
from ..errors import ScenarioError

DEFAULT_BEAR_OFFSET = pi / 12  # rad
DEFAULT_LANE_WIDTH = 0.8       # m

PROMPTS = ("straight", "bear_left", "bear_right")


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    theta: float


@dataclass(frozen=True)
class ScriptedPolicy:
    """Open-loop pedestrian: hold start->goal bearing, optionally offset.

    bear_left/bear_right offset the held bearing by +-bear_offset until the
    lateral offset from the start->goal line exceeds lane_width, after which
    the pedestrian walks parallel to that line. The rule is stateless in the
    current position, and the offset cannot re-enter the lane once out.
    """

    prompt: str = "straight"
    bear_offset: float = DEFAULT_BEAR_OFFSET
    lane_width: float = DEFAULT_LANE_WIDTH


@dataclass(frozen=True)
class ReactivePolicy:
    """Closed-loop pedestrian running the same opinion controller."""

    params: OpinionParams
    z0: float = 0.0


@dataclass(frozen=True)
class ExternalPolicy:
    """Pedestrian driven over the realtime service; starts stopped."""


HumanPolicy = Union[ScriptedPolicy, ReactivePolicy, ExternalPolicy]


@dataclass(frozen=True)
class RobotSpec:
    start: Pose
    goal: Tuple[float, float]
    speed: float
    params: OpinionParams


@dataclass(frozen=True)
class HumanSpec:
    start: Pose
    goal: Tuple[float, float]
    speed: float
    policy: HumanPolicy


@dataclass(frozen=True)
class Scenario:
    """Full trial configuration. Immutable; derive variants with replace()."""

    robot: RobotSpec
    humans: Tuple[HumanSpec, ...]
    max_time: float
    dt: float = 0.01
    seed: int = 0
    z_noise_std: float = 1e-3
    detection_range: float = 20.0
    fov_half_angle: float = pi / 3
    goal_tolerance: float = 0.2
    collision_radius: float = 0.25
    eta_cap: float = 1.4
    robot_z0: Optional[float] = None  # overrides the seeded draw when set
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "humans", tuple(self.humans))


def validate_scenario(scenario: Scenario) -> list:
    """Return a list of violation strings; empty means valid."""
    v = []
    if scenario.dt <= 0.0:
        v.append("dt must be > 0")
    if scenario.max_time <= 0.0:
        v.append("max_time must be > 0")
    elif scenario.dt > 0.0 and scenario.max_time < scenario.dt:
        v.append("max_time must be >= dt")
    if scenario.robot.speed <= 0.0:
        v.append("robot.speed must be > 0")
    if scenario.z_noise_std < 0.0:
        v.append("z_noise_std must be >= 0")
    if scenario.detection_range <= 0.0:
        v.append("detection_range must be > 0")
    if not 0.0 < scenario.fov_half_angle <= pi:
        v.append("fov_half_angle must be in (0, pi]")
    if scenario.goal_tolerance <= 0.0:
        v.append("goal_tolerance must be > 0")
    if scenario.collision_radius < 0.0:
        v.append("collision_radius must be >= 0")
    if not 0.0 < scenario.eta_cap < pi / 2:
        v.append("eta_cap must be in (0, pi/2)")
    for i, h in enumerate(scenario.humans):
        if h.speed < 0.0:
            v.append(f"humans[{i}].speed must be >= 0")
        if isinstance(h.policy, ScriptedPolicy):
            if h.policy.prompt not in PROMPTS:
                v.append(f"humans[{i}].policy.prompt must be one of {PROMPTS}")
            if h.policy.bear_offset < 0.0:
                v.append(f"humans[{i}].policy.bear_offset must be >= 0")
            if h.policy.lane_width <= 0.0:
                v.append(f"humans[{i}].policy.lane_width must be > 0")
            if h.goal == (h.start.x, h.start.y):
                v.append(f"humans[{i}] scripted start and goal coincide")
    return v


# ---------------------------------------------------------------------------
# dict / JSON round-trip

def _attention_to_dict(law: AttentionLaw) -> dict:
    if isinstance(law, HillAttention):
        return {"law": "hill", "u_lo": law.u_lo, "u_hi": law.u_hi,
                "R": law.R, "n": law.n}
    return {"law": "exponential", "tau_u": law.tau_u, "m": law.m,
            "c": law.c, "R": law.R}


def _params_to_dict(p: OpinionParams) -> dict:
    return {"d": p.d, "alpha": p.alpha, "gamma": p.gamma, "b": p.b,
            "beta": p.beta, "k": p.k,
            "attention": _attention_to_dict(p.attention)}


def _policy_to_dict(policy: HumanPolicy) -> dict:
    if isinstance(policy, ScriptedPolicy):
        return {"kind": "scripted", "prompt": policy.prompt,
                "bear_offset": policy.bear_offset,
                "lane_width": policy.lane_width}
    if isinstance(policy, ReactivePolicy):
        return {"kind": "reactive", "params": _params_to_dict(policy.params),
                "z0": policy.z0}
    return {"kind": "external"}


def scenario_to_dict(scenario: Scenario) -> dict:
    d = {
        "name": scenario.name,
        "robot": {
            "start": asdict(scenario.robot.start),
            "goal": {"x": scenario.robot.goal[0], "y": scenario.robot.goal[1]},
            "speed": scenario.robot.speed,
            "params": _params_to_dict(scenario.robot.params),
        },
        "humans": [
            {
                "start": asdict(h.start),
                "goal": {"x": h.goal[0], "y": h.goal[1]},
                "speed": h.speed,
                "policy": _policy_to_dict(h.policy),
            }
            for h in scenario.humans
        ],
        "dt": scenario.dt,
        "max_time": scenario.max_time,
        "seed": scenario.seed,
        "z_noise_std": scenario.z_noise_std,
        "detection_range": scenario.detection_range,
        "fov_half_angle": scenario.fov_half_angle,
        "goal_tolerance": scenario.goal_tolerance,
        "collision_radius": scenario.collision_radius,
        "eta_cap": scenario.eta_cap,
    }
    if scenario.robot_z0 is not None:
        d["robot_z0"] = scenario.robot_z0
    return d


class _Reader:
    """Collects parse violations with JSON-path locations."""

    def __init__(self):
        self.violations = []

    def fail(self, path, msg):
        self.violations.append(f"{path}: {msg}")

    def number(self, obj, path, key, default=None, required=False):
        if key not in obj:
            if required:
                self.fail(f"{path}.{key}", "missing required field")
            return default
        val = obj[key]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            self.fail(f"{path}.{key}", "must be a number")
            return default
        return float(val)

    def point(self, obj, path, key):
        val = obj.get(key)
        if not isinstance(val, dict):
            self.fail(f"{path}.{key}", "must be an object with x, y")
            return (0.0, 0.0)
        return (self.number(val, f"{path}.{key}", "x", 0.0, required=True),
                self.number(val, f"{path}.{key}", "y", 0.0, required=True))

    def pose(self, obj, path, key):
        val = obj.get(key)
        if not isinstance(val, dict):
            self.fail(f"{path}.{key}", "must be an object with x, y, theta")
            return Pose(0.0, 0.0, 0.0)
        p = f"{path}.{key}"
        return Pose(self.number(val, p, "x", 0.0, required=True),
                    self.number(val, p, "y", 0.0, required=True),
                    self.number(val, p, "theta", 0.0, required=True))

    def attention(self, obj, path):
        if not isinstance(obj, dict):
            self.fail(path, "attention must be an object")
            return HillAttention(0.0, 1.0, 1.0, 1.0)
        law = obj.get("law")
        try:
            if law == "hill":
                return HillAttention(
                    u_lo=self.number(obj, path, "u_lo", 0.0, required=True),
                    u_hi=self.number(obj, path, "u_hi", 1.0, required=True),
                    R=self.number(obj, path, "R", 1.0, required=True),
                    n=self.number(obj, path, "n", 1.0, required=True))
            if law == "exponential":
                return ExponentialAttention(
                    tau_u=self.number(obj, path, "tau_u", 1.0, required=True),
                    m=self.number(obj, path, "m", 1.0, required=True),
                    c=self.number(obj, path, "c", 1.0, required=True),
                    R=self.number(obj, path, "R", 1.0, required=True))
        except ValueError as exc:
            self.fail(path, str(exc))
            return HillAttention(0.0, 1.0, 1.0, 1.0)
        self.fail(f"{path}.law", "must be 'hill' or 'exponential'")
        return HillAttention(0.0, 1.0, 1.0, 1.0)

    def params(self, obj, path):
        if not isinstance(obj, dict):
            self.fail(path, "params must be an object")
            obj = {}
        attention = self.attention(obj.get("attention"), f"{path}.attention")
        try:
            return OpinionParams(
                d=self.number(obj, path, "d", 1.0, required=True),
                alpha=self.number(obj, path, "alpha", 1.0, required=True),
                gamma=self.number(obj, path, "gamma", 0.0, required=True),
                b=self.number(obj, path, "b", 0.0, required=True),
                beta=self.number(obj, path, "beta", pi / 4, required=True),
                k=self.number(obj, path, "k", 1.0, required=True),
                attention=attention)
        except ValueError as exc:
            self.fail(path, str(exc))
            return OpinionParams(1.0, 1.0, 0.0, 0.0, pi / 4, 1.0, attention)

    def policy(self, obj, path):
        if not isinstance(obj, dict):
            self.fail(path, "policy must be an object")
            return ScriptedPolicy()
        kind = obj.get("kind")
        if kind == "scripted":
            prompt = obj.get("prompt", "straight")
            if prompt not in PROMPTS:
                self.fail(f"{path}.prompt", f"must be one of {PROMPTS}")
                prompt = "straight"
            return ScriptedPolicy(
                prompt=prompt,
                bear_offset=self.number(obj, path, "bear_offset",
                                        DEFAULT_BEAR_OFFSET),
                lane_width=self.number(obj, path, "lane_width",
                                       DEFAULT_LANE_WIDTH))
        if kind == "reactive":
            return ReactivePolicy(params=self.params(obj.get("params"),
                                                     f"{path}.params"),
                                  z0=self.number(obj, path, "z0", 0.0))
        if kind == "external":
            return ExternalPolicy()
        self.fail(f"{path}.kind",
                  "must be 'scripted', 'reactive', or 'external'")
        return ScriptedPolicy()


def scenario_from_dict(data: dict) -> Scenario:
    """Build a Scenario from a plain dict, raising ScenarioError on problems."""
    r = _Reader()
    if not isinstance(data, dict):
        raise ScenarioError(["top level must be a JSON object"])
    robot_obj = data.get("robot")
    if not isinstance(robot_obj, dict):
        r.fail("robot", "missing or not an object")
        robot_obj = {}
    robot = RobotSpec(
        start=r.pose(robot_obj, "robot", "start"),
        goal=r.point(robot_obj, "robot", "goal"),
        speed=r.number(robot_obj, "robot", "speed", 1.0, required=True),
        params=r.params(robot_obj.get("params"), "robot.params"))
    humans = []
    humans_obj = data.get("humans", [])
    if not isinstance(humans_obj, list):
        r.fail("humans", "must be an array")
        humans_obj = []
    for i, h in enumerate(humans_obj):
        path = f"humans[{i}]"
        if not isinstance(h, dict):
            r.fail(path, "must be an object")
            continue
        humans.append(HumanSpec(
            start=r.pose(h, path, "start"),
            goal=r.point(h, path, "goal"),
            speed=r.number(h, path, "speed", 1.0, required=True),
            policy=r.policy(h.get("policy"), f"{path}.policy")))
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        r.fail("seed", "must be an integer")
        seed = 0
    scenario = Scenario(
        robot=robot,
        humans=tuple(humans),
        max_time=r.number(data, "$", "max_time", 1.0, required=True),
        dt=r.number(data, "$", "dt", 0.01),
        seed=seed,
        z_noise_std=r.number(data, "$", "z_noise_std", 1e-3),
        detection_range=r.number(data, "$", "detection_range", 20.0),
        fov_half_angle=r.number(data, "$", "fov_half_angle", pi / 3),
        goal_tolerance=r.number(data, "$", "goal_tolerance", 0.2),
        collision_radius=r.number(data, "$", "collision_radius", 0.25),
        eta_cap=r.number(data, "$", "eta_cap", 1.4),
        robot_z0=r.number(data, "$", "robot_z0", None),
        name=str(data.get("name", "")))
    violations = r.violations + validate_scenario(scenario)
    if violations:
        raise ScenarioError(violations)
    return scenario


def load_scenario(path) -> Scenario:
    """Load and validate a scenario JSON file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ScenarioError([f"cannot read scenario: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            [f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: "
             f"{exc.msg}"]) from exc
    return scenario_from_dict(data)


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")


def with_overrides(scenario: Scenario, *, seed=None, beta=None, dt=None,
                   attention=None) -> Scenario:
    """Apply CLI-style overrides, returning a new Scenario.

    attention may be 'hill' or 'ode'; switching variants fills the target
    law's shape constants with reference values and carries over R.
    """
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    if dt is not None:
        scenario = replace(scenario, dt=dt)
    params = scenario.robot.params
    if beta is not None:
        params = replace(params, beta=beta)
    if attention is not None:
        current = params.attention
        if attention == "hill" and not isinstance(current, HillAttention):
            params = replace(params, attention=HillAttention(
                u_lo=0.0, u_hi=1.5, R=current.R, n=7.0))
        elif attention == "ode" and not isinstance(current,
                                                   ExponentialAttention):
            params = replace(params, attention=ExponentialAttention(
                tau_u=1.0, m=1.0, c=1.0, R=current.R))
    if params is not scenario.robot.params:
        scenario = replace(scenario, robot=replace(scenario.robot,
                                                   params=params))
    return scenario
