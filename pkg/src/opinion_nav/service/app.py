"""FastAPI wiring for the realtime session server.

One WebSocket connection hosts one session at a time (a fresh one can be
opened in place with an ``open`` message). The session engine itself is
synchronous and deterministic; this layer adds transport, wall-clock pacing,
and log flushing. Pacing uses a fixed-timestep accumulator: when the host
stalls, the loop catches up by stepping several ticks at the original dt
rather than stretching it.
"""

import asyncio
import json
import uuid
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import (FastAPI, HTTPException, Query, WebSocket,
                     WebSocketDisconnect)
from fastapi.middleware.cors import CORSMiddleware
from pydantic import ValidationError
from starlette.websockets import WebSocketState

from .. import __version__
from ..errors import ScenarioError
from ..sim.scenario import Scenario, scenario_from_dict, scenario_to_dict
from .models import HealthResponse, InputMessage, StepMessage
from .session import SessionEngine

# one wall-clock second of backlog at most; beyond that the accumulator
# re-anchors instead of hogging the event loop
_MAX_BURST_SECONDS = 1.0


def bundled_scenarios() -> Dict[str, Scenario]:
    """Load the scenario files shipped inside the package."""
    out: Dict[str, Scenario] = {}
    root = resources.files(__package__) / "scenarios"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            scn = scenario_from_dict(json.loads(entry.read_text()))
            out[scn.name or entry.name[:-5]] = scn
    return out


class _LiveSession:
    """Mutable per-connection state shared by the pace and receive loops."""

    def __init__(self, engine: SessionEngine, log_dir: Optional[Path]):
        self.engine = engine
        self.log_dir = log_dir
        self.session_id = uuid.uuid4().hex
        self.generation = 0  # bumped when `open` swaps the engine

    def flush_log(self) -> None:
        if self.log_dir is None or not self.engine.log:
            return
        self.log_dir.mkdir(parents=True, exist_ok=True)
        name = self.engine.scenario.name or "session"
        self.engine.write_log(self.log_dir / f"{name}-{self.session_id}.jsonl")

    def reset(self, engine: SessionEngine) -> None:
        self.flush_log()
        self.engine = engine
        self.session_id = uuid.uuid4().hex
        self.generation += 1


async def _send_all(ws: WebSocket, payloads: List[dict]) -> None:
    for payload in payloads:
        await ws.send_json(payload)


async def _pace_loop(ws: WebSocket, live: _LiveSession) -> None:
    """Advance the current engine in wall-clock time until cancelled."""
    loop = asyncio.get_running_loop()
    gen = live.generation
    period = live.engine.scenario.dt
    next_t = loop.time() + period
    while True:
        if live.generation != gen:
            gen = live.generation
            period = live.engine.scenario.dt
            next_t = loop.time() + period
        engine = live.engine
        if engine.done:
            await asyncio.sleep(period)
            continue
        delay = next_t - loop.time()
        if delay > 0.0:
            await asyncio.sleep(delay)
        if next_t < loop.time() - _MAX_BURST_SECONDS:
            next_t = loop.time()  # drop backlog after a long host stall
        while (not engine.done and live.generation == gen
               and next_t <= loop.time() + 1e-9):
            await _send_all(ws, engine.tick())
            next_t += period
        if engine.outcome == "error":
            await ws.close(code=1011)
            return


def create_app(extra_scenarios: Optional[Dict[str, Scenario]] = None,
               log_dir: Optional[str] = None,
               default_scenario: Optional[str] = None) -> FastAPI:
    """Build the server app around a scenario registry.

    `extra_scenarios` are merged over the bundled ones; `default_scenario`
    names the registry entry used when a client connects without an explicit
    choice (defaults to the first registered name).
    """
    registry = bundled_scenarios()
    if extra_scenarios:
        registry.update(extra_scenarios)
    if not registry:
        raise ValueError("no scenarios registered")
    if default_scenario is None:
        default_scenario = next(iter(sorted(registry)))
    if default_scenario not in registry:
        raise ValueError(f"unknown default scenario: {default_scenario!r}")
    log_path = Path(log_dir) if log_dir is not None else None

    app = FastAPI(title="opinion-nav realtime service", version=__version__)
    # the browser client is served from its own origin (a static file server)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["GET"], allow_headers=["*"])

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(version=__version__)

    @app.get("/scenarios")
    def list_scenarios() -> List[str]:
        return sorted(registry)

    @app.get("/scenarios/{name}")
    def get_scenario(name: str):
        if name not in registry:
            raise HTTPException(status_code=404,
                                detail=f"unknown scenario: {name}")
        return scenario_to_dict(registry[name])

    def _make_engine(name: str, seed: Optional[int],
                     broadcast_every: Optional[int]) -> SessionEngine:
        if name not in registry:
            raise ScenarioError([f"unknown scenario: {name}"])
        return SessionEngine(registry[name], seed=seed,
                             broadcast_every=broadcast_every)

    @app.websocket("/ws")
    async def ws_session(ws: WebSocket,
                         scenario: Optional[str] = None,
                         seed: Optional[int] = None,
                         paced: bool = True,
                         broadcast_every: Optional[int] = Query(None, ge=1)):
        await ws.accept()
        name = scenario if scenario is not None else default_scenario
        try:
            engine = _make_engine(name, seed, broadcast_every)
        except ScenarioError as exc:
            await ws.send_json({"type": "error", "message": str(exc)})
            await ws.close(code=1008)
            return
        live = _LiveSession(engine, log_path)
        await _send_all(ws, engine.initial_messages)
        pace = asyncio.create_task(_pace_loop(ws, live)) if paced else None
        try:
            await _receive_loop(ws, live, paced)
        except WebSocketDisconnect:
            pass
        finally:
            if pace is not None:
                pace.cancel()
                try:
                    await pace
                except asyncio.CancelledError:
                    pass
            live.flush_log()

    async def _receive_loop(ws: WebSocket, live: _LiveSession,
                            paced: bool) -> None:
        # the error paths close the socket server-side; stop reading then
        while ws.application_state == WebSocketState.CONNECTED:
            raw = await ws.receive_text()
            try:
                msg = json.loads(raw)
            except json.JSONDecodeError:
                await ws.send_json({"type": "error",
                                    "message": "message is not valid JSON"})
                continue
            mtype = msg.get("type") if isinstance(msg, dict) else None
            if mtype == "input":
                await _handle_input(ws, live, msg)
            elif mtype == "step":
                await _handle_step(ws, live, msg, paced)
            elif mtype == "open":
                await _handle_open(ws, live, msg)
            else:
                await ws.send_json({"type": "error",
                                    "message": f"unknown message type: "
                                               f"{mtype!r}"})

    async def _handle_input(ws: WebSocket, live: _LiveSession,
                            msg: dict) -> None:
        try:
            parsed = InputMessage(**msg)
            ack = live.engine.apply_input(
                parsed.model_dump(exclude={"type"}, exclude_none=True))
        except (ValidationError, ValueError) as exc:
            await ws.send_json({"type": "error", "message": str(exc)})
            return
        await ws.send_json(ack)

    async def _handle_step(ws: WebSocket, live: _LiveSession, msg: dict,
                           paced: bool) -> None:
        if paced:
            await ws.send_json({"type": "error",
                                "message": "stepping requires ?paced=0"})
            return
        try:
            parsed = StepMessage(**msg)
        except ValidationError as exc:
            await ws.send_json({"type": "error", "message": str(exc)})
            return
        engine = live.engine
        for _ in range(parsed.n):
            if engine.done:
                break
            await _send_all(ws, engine.tick())
        await ws.send_json({"type": "ack", "tick": engine.world.step_index,
                            "clamped": False})
        if engine.outcome == "error":
            await ws.close(code=1011)

    async def _handle_open(ws: WebSocket, live: _LiveSession,
                           msg: dict) -> None:
        name = msg.get("scenario", live.engine.scenario.name)
        seed = msg.get("seed")
        if seed is not None and not isinstance(seed, int):
            await ws.send_json({"type": "error",
                                "message": "seed must be an integer"})
            return
        try:
            engine = _make_engine(name, seed, live.engine.broadcast_every)
        except ScenarioError as exc:
            await ws.send_json({"type": "error", "message": str(exc)})
            return
        live.reset(engine)
        await _send_all(ws, engine.initial_messages)

    return app
