"""Fixed-timestep drill session engine with bit-exact replay.

One session = one trainee running one scenario. Every step advances the
clock by exactly one tick (0.1 s), applies at most one trainee command,
moves the trainee along queued routes, ticks the fire, perceives cues and
feeds protocol events through the drill phase machine. Identical
(scenario, seed, command list) inputs produce byte-identical event logs.

Timing convention for scoring: a phase change caused by a trainee command
takes effect at the start of its tick; one caused by the simulation (cue
perception, the fire going out, arriving at muster) takes effect at the end
of its tick. That makes a 45.0 s work budget show up as exactly 45.0 s of
suppressing time.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .drill import (
    DrillError,
    DrillEvent,
    DrillEventKind,
    DrillPhase,
    TaskChecklist,
    assessment_verdict,
    next_required_task,
)
from .drill import phase_transition as _phase_transition
from .errors import IncompatibleLog, ReplayDivergence, ScenarioInvalid, TickMismatch
from .fire import FireState, FireStatus, SeverityClass, cues_at, fire_tick, ignite
from .layout import CompartmentKind, EquipmentKind, equipment_in, shortest_escape_route, shortest_path
from .scenario import Scenario, validate_scenario

TICK_S = 0.1
WALK_SPEED_M_S = 1.4
ENGINE_VERSION = "1.0.0"


def ticks_to_seconds(ticks: int) -> float:
    return round(ticks * TICK_S, 3)


class ActionKind(str, Enum):
    MOVE_TO = "move_to"
    PICK_UP = "pick_up"
    START_APPLY = "start_apply"
    STOP_APPLY = "stop_apply"
    USE_PHONE = "use_phone"
    PULL_ALARM = "pull_alarm"
    ASSESS = "assess"
    EVACUATE = "evacuate"
    WAIT = "wait"


@dataclass(frozen=True)
class ActionCommand:
    tick: int
    kind: ActionKind
    target: str | None = None
    severity: SeverityClass | None = None
    rebased_from: int | None = None  # original client tick when the server rebased

    def to_obj(self) -> dict:
        obj: dict = {"tick": self.tick, "kind": self.kind.value}
        if self.target is not None:
            obj["target"] = self.target
        if self.severity is not None:
            obj["severity"] = self.severity.value
        if self.rebased_from is not None:
            obj["rebased_from"] = self.rebased_from
        return obj

    @staticmethod
    def from_obj(obj: dict) -> "ActionCommand":
        return ActionCommand(
            tick=int(obj["tick"]),
            kind=ActionKind(obj["kind"]),
            target=obj.get("target"),
            severity=SeverityClass(obj["severity"]) if obj.get("severity") else None,
            rebased_from=obj.get("rebased_from"),
        )


@dataclass
class Transit:
    from_id: str
    to_id: str
    ticks_done: int
    ticks_total: int

    @property
    def progress(self) -> float:
        return self.ticks_done / self.ticks_total


@dataclass
class TraineeState:
    compartment: str
    in_transit: Transit | None = None
    carrying_extinguisher: str | None = None
    applying_agent: bool = False


@dataclass(frozen=True)
class SessionEvent:
    tick: int
    seq: int
    kind: str
    payload: dict

    def to_line(self) -> str:
        return json.dumps(
            {"tick": self.tick, "seq": self.seq, "kind": self.kind, "payload": self.payload},
            sort_keys=True,
            separators=(",", ":"),
        )

    @staticmethod
    def from_line(line: str) -> "SessionEvent":
        obj = json.loads(line)
        return SessionEvent(tick=obj["tick"], seq=obj["seq"], kind=obj["kind"], payload=obj["payload"])


@dataclass
class DrillSession:
    scenario: Scenario
    rng_seed: int
    tick: int = 0
    trainee: TraineeState = None  # type: ignore[assignment]
    fire: FireState = None  # type: ignore[assignment]
    phase: DrillPhase = DrillPhase.PATROL
    checklist: TaskChecklist = field(default_factory=TaskChecklist)
    errors: list[DrillError] = field(default_factory=list)
    log: list[SessionEvent] = field(default_factory=list)

    # engine internals, not part of the hashed state
    pending_route: list[str] = field(default_factory=list)
    finished: bool = False
    _seq: int = 0
    _last_cues: tuple[str, ...] = ()

    def emit(self, kind: str, payload: dict) -> SessionEvent:
        event = SessionEvent(tick=self.tick, seq=self._seq, kind=kind, payload=payload)
        self._seq += 1
        self.log.append(event)
        return event

    def log_lines(self) -> list[str]:
        return [e.to_line() for e in self.log]


def state_hash(session: DrillSession) -> str:
    """64-bit digest of the drill-relevant state (documented in docs/protocol.md).

    Canonical JSON of (tick, trainee, fire, phase, checklist, errors) hashed
    with SHA-256, truncated to the first 8 bytes, hex encoded.
    """
    transit = session.trainee.in_transit
    doc = {
        "tick": session.tick,
        "trainee": {
            "compartment": session.trainee.compartment,
            "in_transit": None
            if transit is None
            else {
                "from": transit.from_id,
                "to": transit.to_id,
                "ticks_done": transit.ticks_done,
                "ticks_total": transit.ticks_total,
            },
            "carrying_extinguisher": session.trainee.carrying_extinguisher,
            "applying_agent": session.trainee.applying_agent,
        },
        "fire": {
            "intensity": session.fire.intensity,
            "remaining_work_s": session.fire.remaining_work_s,
            "status": session.fire.status.value,
        },
        "phase": session.phase.value,
        "checklist": {
            "discovered": session.checklist.discovered,
            "reported": session.checklist.reported,
            "alarm_raised": session.checklist.alarm_raised,
            "assessed": session.checklist.assessed,
            "assessment_correct": session.checklist.assessment_correct,
            "suppression_done_or_correctly_skipped": session.checklist.suppression_done_or_correctly_skipped,
            "mustered": session.checklist.mustered,
        },
        "errors": [{"kind": e.kind.value, "tick": e.tick, "detail": e.detail} for e in session.errors],
    }
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def new_session(scenario: Scenario, seed: int) -> DrillSession:
    """Fresh session at tick 0; raises ScenarioInvalid on a non-compliant scenario."""
    report = validate_scenario(scenario)
    if not report.ok:
        raise ScenarioInvalid(report)
    session = DrillSession(
        scenario=scenario,
        rng_seed=seed & 0xFFFFFFFFFFFFFFFF,
        trainee=TraineeState(compartment=scenario.trainee_start),
        fire=ignite(scenario.fire),
    )
    session.emit(
        "session_started",
        {"scenario_id": scenario.id, "seed": session.rng_seed, "engine_version": ENGINE_VERSION},
    )
    return session


# ---------------------------------------------------------------------------
# Stepping


def _transit_ticks(length_m: float) -> int:
    return max(1, math.ceil(length_m / (WALK_SPEED_M_S * TICK_S)))


def _emit_phase_change(session: DrillSession, old: DrillPhase, new: DrillPhase, cause: str) -> None:
    # commands take effect at the start of their tick, simulation results at the end
    effective = session.tick if cause == "command" else session.tick + 1
    session.emit("phase_changed", {"from": old.value, "to": new.value, "cause": cause, "at_tick": effective})
    if session.scenario.guidance_enabled:
        hint = next_required_task(new, session.fire.spec, True)
        if hint is not None:
            session.emit("guidance", {"text": hint})


def _apply_protocol(session: DrillSession, event: DrillEvent, cause: str) -> bool:
    """Feed one protocol event through the phase machine; returns acceptance."""
    old = session.phase
    new_phase, errors = _phase_transition(old, event, session.scenario.fire, tick=session.tick)
    accepted = not any(e.kind.value == "action_out_of_phase" for e in errors)
    for err in errors:
        session.errors.append(err)
        session.emit("error_logged", {"kind": err.kind.value, "detail": err.detail})
    if accepted:
        if event.kind is DrillEventKind.SUBMIT_ASSESSMENT:
            session.checklist.assessed = True
            session.checklist.assessment_correct = assessment_verdict(event.severity, session.scenario.fire)
        if event.kind is DrillEventKind.FIRE_EXTINGUISHED:
            session.checklist.suppression_done_or_correctly_skipped = True
        if (
            event.kind is DrillEventKind.BEGIN_EVACUATION
            and old is DrillPhase.SEVERITY_ASSESSED
            and not session.scenario.fire.extinguishable
        ):
            session.checklist.suppression_done_or_correctly_skipped = True
    if new_phase is not old:
        session.phase = new_phase
        session.checklist.ratchet_to(new_phase)
        _emit_phase_change(session, old, new_phase, cause)
    return accepted


def _reject(session: DrillSession, command: ActionCommand, reason: str) -> None:
    session.emit("command_rejected", {"kind": command.kind.value, "reason": reason})


def _set_route(session: DrillSession, path: list[str]) -> None:
    # path starts at the routing origin; queue everything after it
    session.pending_route = path[1:]
    if session.pending_route and session.trainee.applying_agent:
        session.trainee.applying_agent = False
        session.emit("apply_stopped", {"reason": "moving"})


def _route_origin(session: DrillSession) -> str:
    transit = session.trainee.in_transit
    return transit.to_id if transit is not None else session.trainee.compartment


def _co_located_equipment(session: DrillSession, kind: EquipmentKind) -> list[str]:
    if session.trainee.in_transit is not None:
        return []
    return equipment_in(session.scenario.layout, session.trainee.compartment, kind)


def _process_command(session: DrillSession, command: ActionCommand) -> None:
    layout = session.scenario.layout
    trainee = session.trainee
    kind = command.kind

    if kind is ActionKind.WAIT:
        return

    if kind is ActionKind.MOVE_TO:
        if command.target is None or not layout.has_compartment(command.target):
            _reject(session, command, "unknown_target")
            return
        origin = _route_origin(session)
        path = shortest_path(layout, origin, {command.target})
        if path is None:
            _reject(session, command, "unreachable")
            return
        _set_route(session, path)
        session.emit("move_started", {"to": command.target, "route": path})
        return

    if kind is ActionKind.PICK_UP:
        if command.target is None:
            _reject(session, command, "missing_target")
            return
        here = _co_located_equipment(session, EquipmentKind.EXTINGUISHER)
        if command.target not in here:
            _reject(session, command, "not_co_located")
            return
        trainee.carrying_extinguisher = command.target
        session.emit("picked_up", {"equipment": command.target})
        return

    if kind is ActionKind.START_APPLY:
        if trainee.in_transit is not None:
            _reject(session, command, "not_co_located")
            return
        if trainee.carrying_extinguisher is None:
            _reject(session, command, "no_extinguisher")
            return
        trainee.applying_agent = True
        session.emit("apply_started", {"equipment": trainee.carrying_extinguisher})
        if session.phase is DrillPhase.SEVERITY_ASSESSED:
            _apply_protocol(session, DrillEvent(DrillEventKind.BEGIN_SUPPRESSION), "command")
        return

    if kind is ActionKind.STOP_APPLY:
        if trainee.applying_agent:
            trainee.applying_agent = False
            session.emit("apply_stopped", {"reason": "stopped"})
        return

    if kind is ActionKind.USE_PHONE:
        if not _co_located_equipment(session, EquipmentKind.EMERGENCY_PHONE):
            _reject(session, command, "not_co_located")
            return
        session.emit("phone_used", {"compartment": trainee.compartment})
        _apply_protocol(session, DrillEvent(DrillEventKind.REPORT_VIA_PHONE), "command")
        return

    if kind is ActionKind.PULL_ALARM:
        if not _co_located_equipment(session, EquipmentKind.ALARM_CALL_POINT):
            _reject(session, command, "not_co_located")
            return
        session.emit("alarm_pulled", {"compartment": trainee.compartment})
        _apply_protocol(session, DrillEvent(DrillEventKind.ACTIVATE_ALARM), "command")
        return

    if kind is ActionKind.ASSESS:
        if command.severity is None:
            _reject(session, command, "missing_severity")
            return
        session.emit("assessment_submitted", {"severity": command.severity.value})
        _apply_protocol(session, DrillEvent(DrillEventKind.SUBMIT_ASSESSMENT, command.severity), "command")
        return

    if kind is ActionKind.EVACUATE:
        origin = _route_origin(session)
        path = shortest_escape_route(layout, origin)
        _set_route(session, path)
        session.emit("move_started", {"to": path[-1], "route": path})
        if session.phase not in (DrillPhase.EVACUATING, DrillPhase.AT_MUSTER, DrillPhase.COMPLETE):
            _apply_protocol(session, DrillEvent(DrillEventKind.BEGIN_EVACUATION), "command")
        return

    raise AssertionError(f"unhandled command kind: {kind}")


def _advance_movement(session: DrillSession) -> bool:
    """Advance walking by one tick; returns True when an arrival happened."""
    trainee = session.trainee
    layout = session.scenario.layout
    if trainee.in_transit is None and session.pending_route:
        nxt = session.pending_route.pop(0)
        passage = layout.passage_between(trainee.compartment, nxt)
        if passage is None:  # stale route (should not happen on valid layouts)
            session.pending_route.clear()
            return False
        trainee.in_transit = Transit(
            from_id=trainee.compartment,
            to_id=nxt,
            ticks_done=0,
            ticks_total=_transit_ticks(passage.length_m),
        )
    transit = trainee.in_transit
    if transit is None:
        return False
    transit.ticks_done += 1
    if transit.ticks_done < transit.ticks_total:
        return False
    trainee.compartment = transit.to_id
    trainee.in_transit = None
    session.emit("arrived", {"compartment": trainee.compartment})
    # any queued next leg starts on the following tick: crossing a compartment
    # costs one tick, and commands issued there take effect before walking on
    return True


def step(session: DrillSession, command: ActionCommand, log_command: bool = True) -> DrillSession:
    """Advance the session by exactly one tick, applying one command."""
    if session.finished:
        raise TickMismatch(session.tick, command.tick)
    if command.tick != session.tick:
        raise TickMismatch(session.tick, command.tick)

    if log_command:
        session.emit("command", {"command": command.to_obj()})

    _process_command(session, command)
    arrived = _advance_movement(session)

    if session.fire.status is FireStatus.BURNING:
        session.fire = fire_tick(
            session.fire,
            TICK_S,
            agent_applied=session.trainee.applying_agent,
            applier_compartment=session.trainee.compartment,
        )
        if session.fire.status is FireStatus.EXTINGUISHED:
            session.emit("fire_status", {"status": "extinguished"})
            if session.trainee.applying_agent:
                session.trainee.applying_agent = False
            if session.phase is DrillPhase.SUPPRESSING:
                _apply_protocol(session, DrillEvent(DrillEventKind.FIRE_EXTINGUISHED), "simulation")

    # cue perception is automatic: report changes, and discovery ends patrol
    if session.fire.status is FireStatus.BURNING:
        cues = tuple(sorted(c.value for c in cues_at(session.fire, session.scenario.layout, session.trainee.compartment)))
    else:
        cues = ()
    if cues != session._last_cues:
        session.emit("cue", {"cues": list(cues)})
        session._last_cues = cues
    if cues and session.phase is DrillPhase.PATROL:
        _apply_protocol(session, DrillEvent(DrillEventKind.PERCEIVE_CUE), "simulation")

    if session.phase is DrillPhase.EVACUATING:
        here = session.scenario.layout.compartment(session.trainee.compartment)
        if here.kind is CompartmentKind.MUSTER_AREA and (session.trainee.in_transit is None or arrived):
            session.trainee.in_transit = None
            session.pending_route.clear()
            _apply_protocol(session, DrillEvent(DrillEventKind.ARRIVE_AT_MUSTER), "simulation")
            # mustering ends the drill; the unlabelled final edge of the ladder
            old = session.phase
            session.phase = DrillPhase.COMPLETE
            session.checklist.ratchet_to(DrillPhase.COMPLETE)
            _emit_phase_change(session, old, DrillPhase.COMPLETE, "simulation")

    session.tick += 1
    return session


def finish_session(session: DrillSession) -> DrillSession:
    """Close the log with the state hash and a checksum over all prior lines."""
    if session.finished:
        return session
    session.finished = True
    digest = hashlib.sha256()
    for line in session.log_lines():
        digest.update(line.encode("utf-8"))
        digest.update(b"\n")
    session.emit(
        "session_finished",
        {"state_hash": state_hash(session), "total_ticks": session.tick, "log_checksum": digest.hexdigest()},
    )
    return session


def _wait(tick: int) -> ActionCommand:
    return ActionCommand(tick=tick, kind=ActionKind.WAIT)


def _time_limit_reached(session: DrillSession) -> bool:
    limit = session.scenario.time_limit_s
    return limit is not None and session.tick * TICK_S >= limit


def run_script(scenario: Scenario, commands: list[ActionCommand], seed: int) -> tuple[DrillSession, "object"]:
    """Run a command script to completion, padding tick gaps with waits.

    Stops at phase complete, at the scenario time limit, or once commands are
    exhausted and no movement remains. Returns the finished session and its
    score.
    """
    for earlier, later in zip(commands, commands[1:]):
        if later.tick < earlier.tick:
            raise TickMismatch(earlier.tick, later.tick)

    session = new_session(scenario, seed)
    stopped = False
    for command in commands:
        while session.tick < command.tick:
            step(session, _wait(session.tick), log_command=False)
            if session.phase is DrillPhase.COMPLETE or _time_limit_reached(session):
                stopped = True
                break
        if stopped:
            break
        # commands that share a tick execute on consecutive ticks
        effective = command if command.tick == session.tick else ActionCommand(
            tick=session.tick,
            kind=command.kind,
            target=command.target,
            severity=command.severity,
            rebased_from=command.tick,
        )
        step(session, effective)
        if session.phase is DrillPhase.COMPLETE or _time_limit_reached(session):
            break

    # let queued walking finish (e.g. the final leg to the muster area)
    while (
        session.phase is not DrillPhase.COMPLETE
        and not _time_limit_reached(session)
        and (session.trainee.in_transit is not None or session.pending_route)
    ):
        step(session, _wait(session.tick), log_command=False)

    finish_session(session)
    from .scoring import score_session

    return session, score_session(session)


# ---------------------------------------------------------------------------
# Replay


def commands_from_log(lines: list[str]) -> list[ActionCommand]:
    commands = []
    for line in lines:
        event = SessionEvent.from_line(line)
        if event.kind == "command":
            commands.append(ActionCommand.from_obj(event.payload["command"]))
    return commands


def replay(lines: list[str], scenario: Scenario) -> DrillSession:
    """Re-execute a log's commands and verify the regenerated log matches it.

    Any byte of drift between the stored log and the regenerated one is a
    divergence; the stored closing line pins both the state hash and a
    checksum over everything before it.
    """
    lines = [line.rstrip("\n") for line in lines if line.strip()]
    if not lines:
        raise IncompatibleLog("empty log")
    try:
        head = SessionEvent.from_line(lines[0])
        tail = SessionEvent.from_line(lines[-1])
    except (json.JSONDecodeError, KeyError) as exc:
        raise IncompatibleLog(f"malformed log: {exc}") from None
    if head.kind != "session_started":
        raise IncompatibleLog("log does not begin with session_started")
    if head.payload.get("engine_version") != ENGINE_VERSION:
        raise IncompatibleLog(
            f"log written by engine {head.payload.get('engine_version')!r}, this is {ENGINE_VERSION}"
        )
    if head.payload.get("scenario_id") != scenario.id:
        raise IncompatibleLog(
            f"log is for scenario {head.payload.get('scenario_id')!r}, not {scenario.id!r}"
        )
    if tail.kind != "session_finished":
        raise IncompatibleLog("log does not end with session_finished")

    try:
        commands = commands_from_log(lines)
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise IncompatibleLog(f"malformed command event: {exc}") from None

    session, _ = run_script(scenario, commands, seed=int(head.payload.get("seed", 0)))
    fresh = session.log_lines()
    for i, (got, expected) in enumerate(zip(fresh, lines)):
        if got != expected:
            tick = SessionEvent.from_line(lines[i]).tick
            raise ReplayDivergence(tick, f"log line {i + 1} differs from deterministic re-execution")
    if len(fresh) != len(lines):
        i = min(len(fresh), len(lines))
        tick = SessionEvent.from_line((lines + fresh)[i]).tick if i < max(len(fresh), len(lines)) else session.tick
        raise ReplayDivergence(tick, f"log has {len(lines)} events, re-execution produced {len(fresh)}")
    return session
