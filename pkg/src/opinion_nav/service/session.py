"""Synchronous session engine for human-in-the-loop trials.

The engine is a pure state machine: given the same scenario, seed, and
per-tick input schedule it produces identical message streams and metrics,
bit for bit. Pacing, transport, and concurrency live in the app layer; every
session owns one engine and calls it serially.

Tick pipeline (mirroring the headless runner): client commands and scripted
heading refreshes are applied to the current state, the world advances one
RK4 step using the selection frozen at the previous observe phase, then the
new state is observed (selection, resets, attention display), recorded, and
checked for termination.
"""

import json
from dataclasses import replace
from math import atan2
from typing import List, Optional

import numpy as np

from ..core.geometry import wrap_angle
from ..errors import NumericalBlowupError, ScenarioError
from ..sim.runner import Recorder, check_terminal, compute_metrics
from ..sim.scenario import (ExternalPolicy, ReactivePolicy, Scenario,
                            ScriptedPolicy, validate_scenario)
from ..sim.world import advance, command_step, init_world, observe_step

DEFAULT_BROADCAST_RATE = 30.0  # Hz


def validate_live_scenario(scenario: Scenario) -> List[str]:
    """Violations specific to realtime sessions."""
    v = list(validate_scenario(scenario))
    external = [i for i, h in enumerate(scenario.humans)
                if isinstance(h.policy, ExternalPolicy)]
    if len(scenario.humans) == 0:
        v.append("live scenario needs at least one human")
    if len(external) != 1:
        v.append("live scenario must have exactly one external-policy human")
    for i, h in enumerate(scenario.humans):
        if isinstance(h.policy, ReactivePolicy):
            v.append(f"humans[{i}]: live sessions support scripted extras "
                     "only, not reactive")
    return v


class SessionEngine:
    """Deterministic core of one realtime session."""

    def __init__(self, scenario: Scenario, seed: Optional[int] = None,
                 broadcast_every: Optional[int] = None):
        if seed is not None:
            scenario = replace(scenario, seed=seed)
        violations = validate_live_scenario(scenario)
        if violations:
            raise ScenarioError(violations)
        self.scenario = scenario
        self.sim_rate = 1.0 / scenario.dt
        if broadcast_every is None:
            broadcast_every = max(1, round(self.sim_rate
                                           / DEFAULT_BROADCAST_RATE))
        self.broadcast_every = broadcast_every
        self._ext = next(i for i, h in enumerate(scenario.humans)
                         if isinstance(h.policy, ExternalPolicy))
        self._n_steps = int(round(scenario.max_time / scenario.dt))
        rng = np.random.default_rng(scenario.seed)
        self.world = init_world(scenario, rng)
        self.log: List[dict] = []
        self._pending: List[dict] = []
        self._command: Optional[dict] = None
        self._recorder = Recorder(len(scenario.humans))
        self.outcome: Optional[str] = None
        self.metrics = None
        self.initial_messages: List[dict] = []
        self._plan = observe_step(self.world, scenario)
        self._recorder.add(self.world)
        self.initial_messages.append(self._emit_state())
        self._finish_if_terminal(self.initial_messages)

    # -- message builders ---------------------------------------------------

    def _state_payload(self) -> dict:
        w = self.world
        r = w.robot
        return {
            "type": "state",
            "t": w.t,
            "robot": {"x": r.x, "y": r.y, "theta": r.theta, "z": r.z,
                      "u": r.u, "focal": w.focal},
            "humans": [{"x": h.x, "y": h.y, "theta": h.theta}
                       for h in w.humans],
            "goal": {"x": self.scenario.robot.goal[0],
                     "y": self.scenario.robot.goal[1]},
        }

    def _emit_state(self) -> dict:
        payload = self._state_payload()
        self.log.append({"tick": self.world.step_index, "type": "state",
                         "payload": payload})
        return payload

    def _finish_if_terminal(self, out: List[dict]) -> None:
        outcome = check_terminal(self.world, self.scenario, self._n_steps)
        if outcome is None:
            return
        self.outcome = outcome
        t, robot, humans, _ = self._recorder.freeze()
        self.metrics = compute_metrics(t, robot, humans, self.scenario,
                                       outcome)
        payload = {"type": "done", "outcome": outcome,
                   "metrics": self.metrics.to_dict()}
        self.log.append({"tick": self.world.step_index, "type": "terminal",
                         "payload": payload})
        out.append(payload)

    # -- input --------------------------------------------------------------

    def apply_input(self, message: dict) -> dict:
        """Queue a client command; it takes effect at the next tick."""
        if self.outcome is not None:
            return {"type": "ack", "tick": self.world.step_index,
                    "clamped": False}
        mode = message.get("mode")
        if mode not in ("heading", "target", "stop"):
            raise ValueError(f"unknown input mode: {mode!r}")
        fraction = message.get("speed_fraction", 1.0)
        clamped = False
        if not isinstance(fraction, (int, float)):
            raise ValueError("speed_fraction must be a number")
        if fraction < 0.0:
            fraction, clamped = 0.0, True
        elif fraction > 1.0:
            fraction, clamped = 1.0, True
        command = {"mode": mode, "speed_fraction": float(fraction)}
        if mode == "heading":
            theta = message.get("theta")
            if not isinstance(theta, (int, float)):
                raise ValueError("heading input needs numeric theta")
            command["theta"] = float(theta)
        elif mode == "target":
            x, y = message.get("x"), message.get("y")
            if not isinstance(x, (int, float)) \
                    or not isinstance(y, (int, float)):
                raise ValueError("target input needs numeric x and y")
            command["x"], command["y"] = float(x), float(y)
        tick = self.world.step_index + 1
        self._pending.append(command)
        self.log.append({"tick": tick, "type": "input", "payload": command})
        return {"type": "ack", "tick": tick, "clamped": clamped}

    def _apply_command(self) -> None:
        """Move queued commands into effect and steer the external human."""
        if self._pending:
            self._command = self._pending[-1]
            self._pending.clear()
        cmd = self._command
        if cmd is None:
            return
        state = self.world.humans[self._ext]
        v_max = self.scenario.humans[self._ext].speed
        speed = cmd["speed_fraction"] * v_max
        if cmd["mode"] == "stop":
            state.speed = 0.0
        elif cmd["mode"] == "heading":
            state.theta = wrap_angle(cmd["theta"])
            state.speed = speed
        else:  # target: re-aim every tick, stop on arrival
            dx = cmd["x"] - state.x
            dy = cmd["y"] - state.y
            dist = (dx * dx + dy * dy) ** 0.5
            if dist <= 1e-12:
                state.speed = 0.0
            else:
                state.theta = atan2(dy, dx)
                step_len = speed * self.scenario.dt
                state.speed = (dist / self.scenario.dt
                               if dist < step_len else speed)

    # -- stepping -----------------------------------------------------------

    @property
    def done(self) -> bool:
        return self.outcome is not None

    def tick(self) -> List[dict]:
        """Advance one sim tick; returns the messages to send now."""
        if self.outcome is not None:
            return []
        self._apply_command()
        command_step(self.world, self.scenario)
        try:
            self.world = advance(self.world, self.scenario, self._plan)
        except NumericalBlowupError as exc:
            payload = {"type": "error", "message": str(exc)}
            self.outcome = "error"
            self.log.append({"tick": self.world.step_index + 1,
                             "type": "terminal", "payload": payload})
            return [payload]
        self._plan = observe_step(self.world, self.scenario)
        self._recorder.add(self.world)
        out = []
        ends = check_terminal(self.world, self.scenario,
                              self._n_steps) is not None
        # a terminal tick always broadcasts its final state first
        if ends or self.world.step_index % self.broadcast_every == 0:
            out.append(self._emit_state())
        self._finish_if_terminal(out)
        return out

    # -- log and replay -----------------------------------------------------

    def log_lines(self) -> List[str]:
        return [json.dumps(entry, sort_keys=True) for entry in self.log]

    def write_log(self, path) -> None:
        with open(path, "w") as fh:
            for line in self.log_lines():
                fh.write(line + "\n")


def replay_session(scenario: Scenario, log: List[dict],
                   broadcast_every: Optional[int] = None) -> SessionEngine:
    """Re-drive a fresh engine from a recorded log's input schedule.

    Feeds each logged input just before the tick it originally took effect
    at, then advances to the last logged tick. With the same scenario (and
    seed) the resulting state stream and log are byte-identical.
    """
    engine = SessionEngine(scenario, broadcast_every=broadcast_every)
    inputs_by_tick = {}
    last_tick = 0
    for entry in log:
        last_tick = max(last_tick, entry["tick"])
        if entry["type"] == "input":
            inputs_by_tick.setdefault(entry["tick"], []).append(
                entry["payload"])
    for tick in range(1, last_tick + 1):
        for payload in inputs_by_tick.get(tick, ()):
            engine.apply_input(payload)
        if engine.done:
            break
        engine.tick()
    return engine
