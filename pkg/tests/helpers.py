"""Shared scenario builders for the test suite."""

from dataclasses import replace
from math import pi

from opinion_nav.core.geometry import wrap_angle
from opinion_nav.core.params import (ExponentialAttention, HillAttention,
                                     OpinionParams)
from opinion_nav.sim.scenario import (ExternalPolicy, HumanSpec, Pose,
                                      RobotSpec, Scenario, ScriptedPolicy)


def corridor_params(beta=pi / 4, b=0.0):
    """Controller gains for the head-on corridor runs."""
    return OpinionParams(d=0.5, alpha=0.1, gamma=3.0, b=b, beta=beta, k=1.0,
                         attention=ExponentialAttention(tau_u=1.0, m=1.0,
                                                        c=1.0, R=11.0))


def head_on_scenario(beta=pi / 4, seed=0, b=0.0, prompt="straight", dt=0.01,
                     max_time=30.0, robot_z0=None):
    """Robot and one scripted pedestrian walking straight at each other."""
    return Scenario(
        robot=RobotSpec(start=Pose(0.0, 0.0, pi / 2), goal=(0.0, 6.1),
                        speed=0.7, params=corridor_params(beta, b)),
        humans=[HumanSpec(start=Pose(0.0, 6.1, -pi / 2), goal=(0.0, -1.0),
                          speed=1.09, policy=ScriptedPolicy(prompt=prompt))],
        max_time=max_time, dt=dt, seed=seed, robot_z0=robot_z0,
        name="head-on")


def external_head_on_scenario(start_theta=-pi / 2, seed=0, beta=pi / 4,
                              dt=1.0 / 60.0):
    """Head-on corridor with the pedestrian driven externally."""
    return Scenario(
        robot=RobotSpec(start=Pose(0.0, 0.0, pi / 2), goal=(0.0, 6.1),
                        speed=0.7, params=corridor_params(beta)),
        humans=[HumanSpec(start=Pose(0.0, 6.1, start_theta),
                          goal=(0.0, -1.0), speed=1.09,
                          policy=ExternalPolicy())],
        max_time=30.0, dt=dt, seed=seed, name="external-head-on")


def pair_scenario(gap, u_hi, seed=0):
    """Two side-by-side scripted pedestrians; pair midline 0.7 m off axis."""
    params = OpinionParams(d=0.1, alpha=0.1, gamma=4.0, b=0.0, beta=pi / 4,
                           k=1.5,
                           attention=HillAttention(u_lo=0.0, u_hi=u_hi,
                                                   R=7.0, n=7.0))
    mid = 0.7
    lanes = (mid - gap / 2.0, mid + gap / 2.0)
    humans = [HumanSpec(start=Pose(x, 6.0, -pi / 2), goal=(x, -1.5),
                        speed=1.0, policy=ScriptedPolicy())
              for x in lanes]
    scenario = Scenario(
        robot=RobotSpec(start=Pose(0.0, 0.0, pi / 2), goal=(0.0, 6.0),
                        speed=0.75, params=params),
        humans=humans, max_time=30.0, dt=0.01, seed=seed,
        name=f"pair-{gap}")
    return scenario, lanes


def smooth_hill_scenario(dt=0.01):
    """Short horizon with a fixed focal human and no resets or terminals.

    The pedestrian stays detected, closing, and inside the field of view for
    the whole run, the Hill attention varies smoothly, and nothing ends the
    trial, so trajectories at different dt are comparable for order studies.
    """
    params = OpinionParams(d=0.5, alpha=0.1, gamma=3.0, b=0.0, beta=pi / 4,
                           k=1.0,
                           attention=HillAttention(u_lo=0.1, u_hi=1.5,
                                                   R=7.0, n=3.0))
    return Scenario(
        robot=RobotSpec(start=Pose(0.0, 0.0, pi / 2), goal=(0.0, 30.0),
                        speed=0.7, params=params),
        humans=[HumanSpec(start=Pose(0.8, 8.0, -pi / 2), goal=(0.8, -8.0),
                          speed=1.09, policy=ScriptedPolicy())],
        max_time=3.0, dt=dt, seed=0, robot_z0=0.02, z_noise_std=0.0,
        name="smooth")


def mirrored_scenario(scenario):
    """Reflect a scenario about the x = 0 axis (swap left and right)."""
    def flip_pose(p):
        return Pose(-p.x, p.y, _mirror_angle(p.theta))

    def flip_prompt(prompt):
        return {"bear_left": "bear_right", "bear_right": "bear_left",
                "straight": "straight"}[prompt]

    robot = replace(scenario.robot,
                    start=flip_pose(scenario.robot.start),
                    goal=(-scenario.robot.goal[0], scenario.robot.goal[1]),
                    params=replace(scenario.robot.params,
                                   b=-scenario.robot.params.b))
    humans = []
    for h in scenario.humans:
        policy = h.policy
        if isinstance(policy, ScriptedPolicy):
            policy = replace(policy, prompt=flip_prompt(policy.prompt))
        humans.append(replace(h, start=flip_pose(h.start),
                              goal=(-h.goal[0], h.goal[1]), policy=policy))
    z0 = None if scenario.robot_z0 is None else -scenario.robot_z0
    return replace(scenario, robot=robot, humans=humans, robot_z0=z0)


def _mirror_angle(theta):
    return wrap_angle(pi - theta)
