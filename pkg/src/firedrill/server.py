"""Session server: one live drill per connection over newline-framed JSON.

Browsers connect with a standard WebSocket upgrade to /ws; every frame is a
single JSON message terminated by a newline. The server is authoritative:
clients send intents, the engine steps in real time (wait commands fill the
ticks nobody acts on) and clients render the snapshots they are sent. Stale
client ticks are rebased onto the current tick instead of rejected, and the
rebase is visible in the event log so replays stay faithful.
"""

from __future__ import annotations

import asyncio
import itertools
import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .drill import DrillPhase, next_required_task
from .engine import (
    ENGINE_VERSION,
    TICK_S,
    ActionCommand,
    ActionKind,
    DrillSession,
    finish_session,
    new_session,
    state_hash,
    step,
)
from .scenario import Scenario, builtin_levels, parse_scenario, validate_scenario
from .scoring import score_session

PROTOCOL_VERSION = 1
SNAPSHOT_EVERY_TICKS = 10  # at least once per simulated second


@dataclass
class ServerConfig:
    scenario_dir: Path | None = None
    log_dir: Path | None = None
    speed: float = 1.0  # simulated seconds per wall second; <= 0 means unthrottled
    ui_dir: Path | None = None
    sleep: object = None  # injectable for pacing tests
    clock: object = None

    def __post_init__(self) -> None:
        if self.sleep is None:
            self.sleep = asyncio.sleep
        if self.clock is None:
            self.clock = time.monotonic


def load_scenarios(scenario_dir: Path | None) -> dict[str, Scenario]:
    """Scenarios served to clients; falls back to the shipped levels."""
    if scenario_dir is None:
        return {s.id: s for s in builtin_levels()}
    scenarios: dict[str, Scenario] = {}
    for path in sorted(Path(scenario_dir).glob("*.json")):
        scenario = parse_scenario(path.read_bytes())
        if validate_scenario(scenario).ok:
            scenarios[scenario.id] = scenario
    if not scenarios:
        raise ValueError(f"no valid scenario files in {scenario_dir}")
    return scenarios


def _level_descriptor(scenario: Scenario) -> dict:
    layout = scenario.layout
    return {
        "id": scenario.id,
        "title": scenario.title,
        "guidance": scenario.guidance_enabled,
        "trainee_start": scenario.trainee_start,
        "time_limit_s": scenario.time_limit_s,
        "layout": {
            "compartments": [
                {"id": c.id, "kind": c.kind.value, "name": c.display_name, "x": c.x, "y": c.y}
                for c in layout.compartments
            ],
            "passages": [
                {"from": p.from_id, "to": p.to_id, "length_m": p.length_m, "signage": p.has_escape_signage}
                for p in layout.passages
            ],
            "equipment": [
                {"id": e.id, "kind": e.kind.value, "compartment": e.compartment} for e in layout.equipment
            ],
        },
    }


def snapshot_payload(session: DrillSession) -> dict:
    trainee = session.trainee
    transit = trainee.in_transit
    discovered = session.checklist.discovered
    hint = next_required_task(session.phase, session.fire.spec, session.scenario.guidance_enabled)
    return {
        "scenario_id": session.scenario.id,
        "phase": session.phase.value,
        "time_s": round(session.tick * TICK_S, 3),
        "trainee": {
            "compartment": trainee.compartment,
            "in_transit": None
            if transit is None
            else {"from": transit.from_id, "to": transit.to_id, "progress": round(transit.progress, 4)},
            # true only when no route remains queued; interactions sent while
            # this is false may execute mid-walk and be rejected
            "idle": transit is None and not session.pending_route,
            "carrying_extinguisher": trainee.carrying_extinguisher,
            "applying_agent": trainee.applying_agent,
        },
        "fire": {
            "status": session.fire.status.value,
            "intensity": round(session.fire.intensity, 3),
            "compartment": session.fire.spec.compartment if discovered else None,
        },
        "cues": list(session._last_cues),
        "checklist": {
            "discovered": session.checklist.discovered,
            "reported": session.checklist.reported,
            "alarm_raised": session.checklist.alarm_raised,
            "assessed": session.checklist.assessed,
            "assessment_correct": session.checklist.assessment_correct,
            "suppression_done_or_correctly_skipped": session.checklist.suppression_done_or_correctly_skipped,
            "mustered": session.checklist.mustered,
        },
        "error_count": len(session.errors),
        "guidance": hint,
    }


class SessionRunner:
    """Drives one live session at the configured pace."""

    def __init__(self, scenario: Scenario, seed: int, send, config: ServerConfig, log_name: str | None):
        self.scenario = scenario
        self.seed = seed
        self.send = send
        self.config = config
        self.log_name = log_name
        self.commands: asyncio.Queue[ActionCommand] = asyncio.Queue()
        self.paused = False
        self.aborted = False
        self.done = asyncio.Event()
        self.session: DrillSession | None = None

    def enqueue(self, command: ActionCommand) -> None:
        self.commands.put_nowait(command)

    def abort(self) -> None:
        self.aborted = True

    def _message(self, kind: str, tick: int, payload: dict) -> None:
        self.send({"kind": kind, "tick": tick, "payload": payload})

    def _flush_events(self, session: DrillSession, start: int) -> bool:
        phase_changed = False
        for event in session.log[start:]:
            if event.kind == "phase_changed":
                phase_changed = True
                self._message("phase_changed", event.tick, event.payload)
            elif event.kind == "error_logged":
                self._message("error_logged", event.tick, event.payload)
            elif event.kind == "cue":
                self._message("cue", event.tick, event.payload)
            elif event.kind == "guidance":
                self._message("guidance", event.tick, event.payload)
            elif event.kind == "fire_status":
                self._message("fire_update", event.tick, {"status": event.payload["status"], "intensity": round(session.fire.intensity, 3)})
        return phase_changed

    async def run(self) -> None:
        config = self.config
        session = new_session(self.scenario, self.seed)
        self.session = session
        self._message("state_snapshot", session.tick, snapshot_payload(session))

        interval = TICK_S / config.speed if config.speed > 0 else 0.0
        next_deadline = config.clock() + interval
        try:
            while not self.aborted and session.phase is not DrillPhase.COMPLETE:
                if self.paused:
                    await config.sleep(interval or 0.01)
                    next_deadline = config.clock() + interval
                    continue

                try:
                    command = self.commands.get_nowait()
                    synthesized = False
                except asyncio.QueueEmpty:
                    command = ActionCommand(tick=session.tick, kind=ActionKind.WAIT)
                    synthesized = True
                if command.tick != session.tick:
                    command = replace(command, tick=session.tick, rebased_from=command.tick)

                mark = len(session.log)
                step(session, command, log_command=not synthesized)
                phase_changed = self._flush_events(session, mark)
                if phase_changed or session.tick % SNAPSHOT_EVERY_TICKS == 0:
                    self._message("state_snapshot", session.tick, snapshot_payload(session))

                limit = session.scenario.time_limit_s
                if limit is not None and session.tick * TICK_S >= limit:
                    break

                if interval > 0:
                    delay = next_deadline - config.clock()
                    next_deadline += interval
                    # absolute deadlines: a late tick shortens the next sleep
                    # instead of letting lateness accumulate
                    await config.sleep(delay if delay > 0 else 0)
                else:
                    await config.sleep(0)
        finally:
            finish_session(session)
            log_path = None
            if config.log_dir is not None and self.log_name:
                path = Path(config.log_dir) / self.log_name
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text("\n".join(session.log_lines()) + "\n", encoding="utf-8")
                log_path = str(path)
            report = score_session(session)
            payload = report.to_obj()
            payload["state_hash"] = state_hash(session)
            payload["aborted"] = self.aborted
            payload["log_path"] = log_path
            self._message("score", session.tick, payload)
            self.done.set()


def create_app(config: ServerConfig | None = None) -> FastAPI:
    config = config or ServerConfig()
    scenarios = load_scenarios(config.scenario_dir)
    app = FastAPI(title="firedrill session server")
    log_counter = itertools.count(1)

    @app.get("/api/levels")
    def levels() -> dict:
        return {"levels": [_level_descriptor(s) for s in scenarios.values()]}

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket) -> None:
        await websocket.accept()
        outbox: asyncio.Queue[str] = asyncio.Queue()

        async def sender() -> None:
            while True:
                text = await outbox.get()
                await websocket.send_text(text)

        sender_task = asyncio.create_task(sender())

        def send(message: dict) -> None:
            outbox.put_nowait(json.dumps(message, sort_keys=True) + "\n")

        send(
            {
                "kind": "hello",
                "tick": 0,
                "payload": {
                    "version": PROTOCOL_VERSION,
                    "engine_version": ENGINE_VERSION,
                    "levels": [_level_descriptor(s) for s in scenarios.values()],
                },
            }
        )

        runner: SessionRunner | None = None
        runner_task: asyncio.Task | None = None

        def protocol_error(message: str) -> None:
            send({"kind": "protocol_error", "tick": 0, "payload": {"message": message}})

        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    msg = json.loads(raw)
                    if not isinstance(msg, dict):
                        raise ValueError("message must be a JSON object")
                    kind = msg["kind"]
                except (json.JSONDecodeError, KeyError, ValueError) as exc:
                    protocol_error(f"malformed message: {exc}")
                    continue

                if kind == "start_level":
                    if runner is not None and not runner.done.is_set():
                        protocol_error("a session is already running on this connection")
                        continue
                    level_id = msg.get("level")
                    scenario = scenarios.get(level_id)
                    if scenario is None:
                        protocol_error(f"unknown level {level_id!r}")
                        continue
                    seed = int(msg.get("seed", 0))
                    log_name = f"{scenario.id}_seed{seed}_{next(log_counter):04d}.jsonl"
                    runner = SessionRunner(scenario, seed, send, config, log_name)
                    runner_task = asyncio.create_task(runner.run())
                elif kind == "action":
                    if runner is None or runner.done.is_set() or runner.session is None:
                        protocol_error("no live session; send start_level first")
                        continue
                    try:
                        obj = dict(msg["command"])
                        obj.setdefault("tick", runner.session.tick)
                        command = ActionCommand.from_obj(obj)
                    except (KeyError, TypeError, ValueError) as exc:
                        protocol_error(f"malformed command: {exc}")
                        continue
                    runner.enqueue(command)
                elif kind == "pause":
                    if runner is not None:
                        runner.paused = True
                elif kind == "resume":
                    if runner is not None:
                        runner.paused = False
                elif kind == "abort":
                    if runner is not None:
                        runner.abort()
                else:
                    protocol_error(f"unknown message kind {kind!r}")
        except WebSocketDisconnect:
            pass
        finally:
            if runner is not None:
                runner.abort()
            if runner_task is not None:
                try:
                    await asyncio.wait_for(runner_task, timeout=5.0)
                except (asyncio.TimeoutError, asyncio.CancelledError):
                    runner_task.cancel()
            sender_task.cancel()

    if config.ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(config.ui_dir), html=True), name="ui")

    return app


def serve(host: str, port: int, config: ServerConfig) -> None:
    """Run the server until interrupted."""
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port, log_level="info")
