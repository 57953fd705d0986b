"""Scripted reference agents.

Each agent is a policy over live session state; running one produces both a
finished session and the explicit command list it issued, which replays
identically through run_script. The three deviant agents reproduce the
decision errors observed in user testing: attempting to extinguish an
uncontrollable fire, and evacuating before extinguishing a controllable one.
"""

from __future__ import annotations

from typing import Callable

from .drill import DrillPhase
from .engine import ActionCommand, ActionKind, DrillSession, finish_session, new_session, step
from .fire import FireStatus, SeverityClass, severity_class
from .layout import EquipmentKind, equipment_in, shortest_path
from .scenario import Scenario

Policy = Callable[[DrillSession], ActionCommand | None]

_MAX_TICKS = 100_000


def _cmd(session: DrillSession, kind: ActionKind, target: str | None = None, severity: SeverityClass | None = None) -> ActionCommand:
    return ActionCommand(tick=session.tick, kind=kind, target=target, severity=severity)


def _idle(session: DrillSession) -> bool:
    return session.trainee.in_transit is None and not session.pending_route


def _destination(session: DrillSession) -> str:
    if session.pending_route:
        return session.pending_route[-1]
    if session.trainee.in_transit is not None:
        return session.trainee.in_transit.to_id
    return session.trainee.compartment


def _nearest_with(session: DrillSession, kind: EquipmentKind) -> str:
    layout = session.scenario.layout
    hosts = set(layout.compartments_with(kind))
    path = shortest_path(layout, session.trainee.compartment, hosts)
    if path is None:
        raise ValueError(f"no reachable compartment with {kind.value}")
    return path[-1]


def _goto_or(session: DrillSession, destination: str, command: ActionCommand) -> ActionCommand | None:
    """Issue `command` if standing at destination, else head there."""
    if session.trainee.compartment == destination and _idle(session):
        return command
    if _destination(session) != destination:
        return _cmd(session, ActionKind.MOVE_TO, target=destination)
    return None  # already walking there; let the tick pass


def _policy_common(session: DrillSession, on_assessed: Policy, submit: SeverityClass | None = None) -> ActionCommand | None:
    """Shared patrol -> report -> alarm -> assess front half of every agent."""
    phase = session.phase
    if phase is DrillPhase.PATROL:
        if _destination(session) != session.fire.spec.compartment:
            return _cmd(session, ActionKind.MOVE_TO, target=session.fire.spec.compartment)
        return None
    if phase is DrillPhase.FIRE_DISCOVERED:
        dest = _nearest_with(session, EquipmentKind.EMERGENCY_PHONE)
        return _goto_or(session, dest, _cmd(session, ActionKind.USE_PHONE))
    if phase is DrillPhase.REPORTED:
        dest = _nearest_with(session, EquipmentKind.ALARM_CALL_POINT)
        return _goto_or(session, dest, _cmd(session, ActionKind.PULL_ALARM))
    if phase is DrillPhase.ALARM_RAISED:
        if not _idle(session):
            return None
        chosen = submit if submit is not None else severity_class(session.fire.spec)
        return _cmd(session, ActionKind.ASSESS, severity=chosen)
    return on_assessed(session)


def _suppress_then_evacuate(session: DrillSession) -> ActionCommand | None:
    phase = session.phase
    trainee = session.trainee
    if phase is DrillPhase.SEVERITY_ASSESSED:
        if trainee.carrying_extinguisher is None:
            dest = _nearest_with(session, EquipmentKind.EXTINGUISHER)
            if trainee.compartment == dest and _idle(session):
                target = equipment_in(session.scenario.layout, dest, EquipmentKind.EXTINGUISHER)[0]
                return _cmd(session, ActionKind.PICK_UP, target=target)
            return _goto_or(session, dest, _cmd(session, ActionKind.WAIT))
        dest = session.fire.spec.compartment
        return _goto_or(session, dest, _cmd(session, ActionKind.START_APPLY))
    if phase is DrillPhase.SUPPRESSING:
        return None  # keep applying until the fire goes out
    if phase is DrillPhase.EVACUATING:
        if _idle(session) and not session.checklist.mustered:
            return _cmd(session, ActionKind.EVACUATE)
        return None
    return None


def _evacuate_now(session: DrillSession) -> ActionCommand | None:
    if session.phase in (DrillPhase.SEVERITY_ASSESSED, DrillPhase.EVACUATING):
        if _idle(session) and not session.checklist.mustered:
            return _cmd(session, ActionKind.EVACUATE)
    return None


def happy_path_policy(session: DrillSession) -> ActionCommand | None:
    """Textbook drill: report, alarm, correct assessment, then suppress a
    controllable fire (or skip straight to evacuation for an imminent one)."""
    truth = severity_class(session.fire.spec)
    if truth is SeverityClass.CONTROLLABLE:
        return _policy_common(session, _suppress_then_evacuate)
    return _policy_common(session, _evacuate_now)


def suppression_attempt_policy(give_up_after_s: float = 10.0) -> Policy:
    """Misjudges an imminent-threat fire as controllable and tries to fight it
    before giving up and evacuating (testers 4 and 9 on the second level)."""

    def policy(session: DrillSession) -> ActionCommand | None:
        if session.phase is DrillPhase.SUPPRESSING:
            if not session.trainee.applying_agent:
                return None
            started = next(
                (e.tick for e in session.log if e.kind == "apply_started"), session.tick
            )
            from .engine import TICK_S

            if (session.tick - started) * TICK_S >= give_up_after_s and _idle(session):
                return _cmd(session, ActionKind.EVACUATE)
            return None
        return _policy_common(session, _suppress_then_evacuate, submit=SeverityClass.CONTROLLABLE)

    return policy


def premature_evacuation_policy(session: DrillSession) -> ActionCommand | None:
    """Assesses correctly but skips suppression of a controllable fire and
    heads straight for the muster area (tester 8 on the third level)."""
    return _policy_common(session, _evacuate_now)


def run_policy(scenario: Scenario, policy: Policy, seed: int = 0) -> tuple[DrillSession, list[ActionCommand]]:
    """Drive a session with a policy; returns it finished plus the commands issued."""
    session = new_session(scenario, seed)
    commands: list[ActionCommand] = []
    while session.phase is not DrillPhase.COMPLETE and session.tick < _MAX_TICKS:
        command = policy(session)
        if command is None:
            step(session, ActionCommand(tick=session.tick, kind=ActionKind.WAIT), log_command=False)
        else:
            commands.append(command)
            step(session, command)
        if session.phase is not DrillPhase.COMPLETE and _stalled(session, policy):
            break
    finish_session(session)
    return session, commands


def _stalled(session: DrillSession, policy: Policy) -> bool:
    # an agent is stuck if it is idle, not applying, and has nothing to say
    return (
        _idle(session)
        and not session.trainee.applying_agent
        and session.fire.status is not FireStatus.BURNING
        and policy(session) is None
        and session.phase is not DrillPhase.COMPLETE
    )


def script_for(scenario: Scenario, policy: Policy, seed: int = 0) -> list[ActionCommand]:
    _, commands = run_policy(scenario, policy, seed)
    return commands
