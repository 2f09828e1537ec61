"""World stepping: focal selection, resets, and per-step kinematics."""

from dataclasses import replace
from math import atan2, cos, hypot, pi, sin

import numpy as np
import pytest

from helpers import head_on_scenario, pair_scenario
from opinion_nav.core.geometry import relative_geometry
from opinion_nav.core.params import ExponentialAttention
from opinion_nav.errors import NumericalBlowupError
from opinion_nav.sim.scenario import ScriptedPolicy
from opinion_nav.sim.world import (AgentState, World, advance, command_step,
                                   init_world, observe_step, scripted_heading,
                                   select_focal_human, step_world)


def two_human_world(positions, headings, robot=(0.0, 0.0, pi / 2)):
    humans = [AgentState(x, y, th, 1.0)
              for (x, y), th in zip(positions, headings)]
    return World(t=0.0, robot=AgentState(*robot, 0.7), humans=humans)


def brute_force_focal(world, scenario):
    """Independent candidate filter + argmin chi/kappa with lowest index."""
    best, best_score = None, float("inf")
    for j, h in enumerate(world.humans):
        obs = relative_geometry(world.robot.pose(), h.pose(),
                                scenario.robot.goal)
        if obs.chi > scenario.detection_range:
            continue
        if abs(obs.eta_r) > scenario.fov_half_angle:
            continue
        if not -pi / 2 < obs.eta_h < pi / 2:
            continue
        score = obs.chi / obs.kappa
        if score < best_score:
            best, best_score = j, score
    return best


def test_focal_selection_matches_brute_force():
    scn, _ = pair_scenario(3.0, 2.5)
    rng = np.random.default_rng(101)
    checked = 0
    for _ in range(400):
        n = int(rng.integers(1, 5))
        pos = rng.uniform(-8.0, 8.0, size=(n, 2))
        ths = rng.uniform(-pi, pi, size=n)
        world = two_human_world([tuple(p) for p in pos],
                                [float(t) for t in ths],
                                robot=(0.0, 0.0,
                                       float(rng.uniform(-pi, pi))))
        want = brute_force_focal(world, scn)
        got = select_focal_human(world, scn)
        assert got == want
        checked += want is not None
    assert checked > 50  # the grid actually exercises selections


def test_selection_prefers_closing_over_near():
    scn = head_on_scenario()
    # nearer human walks away (not closing); farther one approaches
    world = two_human_world([(0.0, 2.0), (0.0, 5.0)],
                            [pi / 2, -pi / 2])
    assert select_focal_human(world, scn) == 1


def test_selection_tie_keeps_lowest_index():
    scn = head_on_scenario()
    world = two_human_world([(1.0, 3.0), (-1.0, 3.0)],
                            [atan2(-3.0, -1.0), atan2(-3.0, 1.0)])
    # mirror-symmetric pair: identical chi/kappa scores
    assert select_focal_human(world, scn) == 0


def test_out_of_fov_not_selected():
    scn = head_on_scenario()
    # robot faces +y; human dead behind and approaching
    world = two_human_world([(0.0, -3.0)], [pi / 2])
    assert select_focal_human(world, scn) is None


def test_beyond_detection_range_not_selected():
    scn = head_on_scenario()
    world = two_human_world([(0.0, scn.detection_range + 1.0)], [-pi / 2])
    assert select_focal_human(world, scn) is None


def test_no_focal_resets_opinion():
    scn = head_on_scenario()
    world = two_human_world([(0.0, -3.0)], [pi / 2])
    world.robot.z, world.robot.u = 0.8, 2.0
    plan = observe_step(world, scn)
    assert plan.focal is None
    assert world.robot.z == 0.0
    assert world.robot.u == 0.0


def test_hill_attention_displayed_on_observe():
    scn, _ = pair_scenario(0.8, 1.5)
    world = init_world(scn)
    observe_step(world, scn)
    assert world.focal is not None
    assert 0.0 <= world.robot.u <= 1.5
    assert world.robot.u > 0.0


def test_init_world_seeds_z0():
    scn = head_on_scenario(seed=4)
    w1 = init_world(scn, np.random.default_rng(scn.seed))
    w2 = init_world(scn, np.random.default_rng(scn.seed))
    assert w1.robot.z == w2.robot.z
    assert w1.robot.z != 0.0
    assert abs(w1.robot.z) < 6.0 * scn.z_noise_std


def test_init_world_honors_z0_override():
    scn = head_on_scenario(robot_z0=0.25)
    world = init_world(scn, np.random.default_rng(0))
    assert world.robot.z == 0.25


def test_init_world_presets_scripted_heading():
    scn = head_on_scenario(prompt="bear_left")
    world = init_world(scn)
    spec = scn.humans[0]
    assert world.humans[0].theta == scripted_heading(spec, spec.start.x,
                                                     spec.start.y)
    assert world.humans[0].theta != -pi / 2


def test_scripted_heading_bear_and_lane_exit():
    scn = head_on_scenario(prompt="bear_left")
    spec = scn.humans[0]
    base = -pi / 2
    off = spec.policy.bear_offset
    # inside the lane: bear by the offset toward the pedestrian's own left
    assert scripted_heading(spec, 0.0, 6.1) == \
        pytest.approx(base + off, abs=1e-12)
    # walking down from (0, 6.1): its left is +x, so out past the lane width
    # on that side the prompt releases and the heading returns to base
    out_x = spec.policy.lane_width + 0.05
    assert scripted_heading(spec, out_x, 3.0) == pytest.approx(base,
                                                              abs=1e-12)
    # bear_right is the mirror
    spec_r = replace(spec, policy=ScriptedPolicy(prompt="bear_right"))
    assert scripted_heading(spec_r, 0.0, 6.1) == \
        pytest.approx(base - off, abs=1e-12)
    assert scripted_heading(spec_r, -out_x, 3.0) == pytest.approx(base,
                                                                  abs=1e-12)


def test_command_step_refreshes_scripted_heading():
    scn = head_on_scenario(prompt="bear_left")
    world = init_world(scn)
    world.humans[0].theta = 0.123  # stale
    command_step(world, scn)
    spec = scn.humans[0]
    assert world.humans[0].theta == scripted_heading(
        spec, world.humans[0].x, world.humans[0].y)


def test_scripted_human_advances_in_exact_straight_line():
    scn = head_on_scenario()
    world = init_world(scn, np.random.default_rng(0))
    plan = observe_step(world, scn)
    command_step(world, scn)
    before = (world.humans[0].x, world.humans[0].y)
    theta = world.humans[0].theta
    new = advance(world, scn, plan)
    dx = new.humans[0].x - before[0]
    dy = new.humans[0].y - before[1]
    # heading frozen over the step: the displacement is exactly v*dt along it
    assert dx == pytest.approx(scn.humans[0].speed * scn.dt * cos(theta),
                               abs=1e-15)
    assert dy == pytest.approx(scn.humans[0].speed * scn.dt * sin(theta),
                               abs=1e-15)


def test_robot_step_length_curvature_bound():
    # chord of a turning step: |ds - v dt| <= v dt (w dt)^2 / 24 plus slack
    scn = head_on_scenario()
    world = init_world(scn, np.random.default_rng(3))
    v, dt, k = scn.robot.speed, scn.dt, scn.robot.params.k
    bound = v * dt * (k * dt) ** 2 / 24.0 + 1e-12
    for _ in range(400):
        x0, y0 = world.robot.x, world.robot.y
        world = step_world(world, scn)
        ds = hypot(world.robot.x - x0, world.robot.y - y0)
        assert abs(ds - v * dt) <= bound


def test_step_world_advances_time_exactly():
    scn = head_on_scenario()
    world = init_world(scn, np.random.default_rng(0))
    for i in range(5):
        world = step_world(world, scn)
        assert world.step_index == i + 1
        assert world.t == (i + 1) * scn.dt  # no drift from accumulation


def test_blowup_names_semantic_component():
    # a huge attention radius with a tiny time constant drives du/dt to inf
    # (exp stays finite; the division overflows), so the blowup is reported
    # against the robot's attention component by name
    scn = head_on_scenario()
    law = ExponentialAttention(tau_u=1e-10, m=1.0, c=1.0, R=706.0)
    scn = replace(scn, robot=replace(
        scn.robot, params=replace(scn.robot.params, attention=law)))
    world = init_world(scn, np.random.default_rng(0))
    with pytest.raises(NumericalBlowupError) as exc:
        for _ in range(50):
            world = step_world(world, scn)
    assert exc.value.component == "robot.u"
    assert "robot.u" in str(exc.value)
