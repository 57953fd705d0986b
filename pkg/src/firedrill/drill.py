"""SOLAS drill procedure as an explicit phase machine.

The prescribed sequence is: perceive a cue, report via emergency phone,
activate the alarm, assess severity, then either suppress (controllable) or
evacuate (imminent threat), and finally muster. Deviations the simulator
tolerates are graded as decision errors rather than blocked; a trainer that
makes the trained-against mistakes impossible cannot grade them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import InvalidEvent
from .fire import FireSpec, SeverityClass, severity_class


class DrillPhase(str, Enum):
    PATROL = "patrol"
    FIRE_DISCOVERED = "fire_discovered"
    REPORTED = "reported"
    ALARM_RAISED = "alarm_raised"
    SEVERITY_ASSESSED = "severity_assessed"
    SUPPRESSING = "suppressing"
    EVACUATING = "evacuating"
    AT_MUSTER = "at_muster"
    COMPLETE = "complete"


# phases form a forward-only ladder; rank is used both for the monotone-progress
# guarantee and for the stage-completion checklist ratchet
PHASE_RANK: dict[DrillPhase, int] = {p: i for i, p in enumerate(DrillPhase)}


class DrillEventKind(str, Enum):
    PERCEIVE_CUE = "perceive_cue"
    REPORT_VIA_PHONE = "report_via_phone"
    ACTIVATE_ALARM = "activate_alarm"
    SUBMIT_ASSESSMENT = "submit_assessment"
    BEGIN_SUPPRESSION = "begin_suppression"
    FIRE_EXTINGUISHED = "fire_extinguished"
    BEGIN_EVACUATION = "begin_evacuation"
    ARRIVE_AT_MUSTER = "arrive_at_muster"


class DrillErrorKind(str, Enum):
    EXTINGUISH_ATTEMPT_ON_IMMINENT_FIRE = "extinguish_attempt_on_imminent_fire"
    PREMATURE_EVACUATION = "premature_evacuation"
    ALARM_BEFORE_REPORT = "alarm_before_report"
    ACTION_OUT_OF_PHASE = "action_out_of_phase"


@dataclass(frozen=True)
class DrillEvent:
    kind: DrillEventKind
    severity: SeverityClass | None = None  # only for submit_assessment

    def __post_init__(self) -> None:
        if self.kind is DrillEventKind.SUBMIT_ASSESSMENT and self.severity is None:
            raise InvalidEvent("submit_assessment requires a severity class")


@dataclass(frozen=True)
class DrillError:
    kind: DrillErrorKind
    tick: int
    detail: str


@dataclass
class TaskChecklist:
    """Stage-completion flags; monotone within a session."""

    discovered: bool = False
    reported: bool = False
    alarm_raised: bool = False
    assessed: bool = False
    assessment_correct: bool = False
    suppression_done_or_correctly_skipped: bool = False
    mustered: bool = False

    def ratchet_to(self, phase: DrillPhase) -> None:
        """Mark every stage at or below `phase` as passed.

        A deviation that skips a stage (alarm before report) still moves the
        drill past that stage; the skip itself lives in the error log, not in
        the completion flags.
        """
        rank = PHASE_RANK[phase]
        if rank >= PHASE_RANK[DrillPhase.FIRE_DISCOVERED]:
            self.discovered = True
        if rank >= PHASE_RANK[DrillPhase.REPORTED]:
            self.reported = True
        if rank >= PHASE_RANK[DrillPhase.ALARM_RAISED]:
            self.alarm_raised = True
        if rank >= PHASE_RANK[DrillPhase.SEVERITY_ASSESSED]:
            self.assessed = True
        if rank >= PHASE_RANK[DrillPhase.AT_MUSTER]:
            self.mustered = True


def assessment_verdict(submitted: SeverityClass, spec: FireSpec) -> bool:
    return submitted == severity_class(spec)


def phase_transition(
    phase: DrillPhase,
    event: DrillEvent,
    scenario_truth: FireSpec,
    tick: int = 0,
) -> tuple[DrillPhase, list[DrillError]]:
    """Apply one drill event; returns the new phase and any decision errors.

    Unknown-edge events leave the phase untouched and log action_out_of_phase.
    Tolerated deviations (alarm first, suppressing an imminent-threat fire,
    evacuating a controllable one) advance the phase and log their error.
    """
    if not isinstance(event, DrillEvent):
        raise InvalidEvent(f"not a drill event: {event!r}")
    truth = severity_class(scenario_truth)
    kind = event.kind
    errors: list[DrillError] = []

    def err(error_kind: DrillErrorKind, detail: str) -> None:
        errors.append(DrillError(kind=error_kind, tick=tick, detail=detail))

    if phase is DrillPhase.PATROL and kind is DrillEventKind.PERCEIVE_CUE:
        return DrillPhase.FIRE_DISCOVERED, errors

    if phase is DrillPhase.FIRE_DISCOVERED:
        if kind is DrillEventKind.REPORT_VIA_PHONE:
            return DrillPhase.REPORTED, errors
        if kind is DrillEventKind.ACTIVATE_ALARM:
            err(DrillErrorKind.ALARM_BEFORE_REPORT, "alarm activated before reporting to the ship master")
            return DrillPhase.ALARM_RAISED, errors

    if phase is DrillPhase.REPORTED and kind is DrillEventKind.ACTIVATE_ALARM:
        return DrillPhase.ALARM_RAISED, errors

    if phase is DrillPhase.ALARM_RAISED:
        if kind is DrillEventKind.SUBMIT_ASSESSMENT:
            return DrillPhase.SEVERITY_ASSESSED, errors
        if kind is DrillEventKind.REPORT_VIA_PHONE:
            # late report after an alarm-first slip; accepted without error
            return DrillPhase.ALARM_RAISED, errors

    if phase is DrillPhase.SEVERITY_ASSESSED:
        if kind is DrillEventKind.BEGIN_SUPPRESSION:
            if truth is SeverityClass.IMMINENT_THREAT:
                err(
                    DrillErrorKind.EXTINGUISH_ATTEMPT_ON_IMMINENT_FIRE,
                    "attempted to extinguish a fire that is an imminent threat",
                )
            return DrillPhase.SUPPRESSING, errors
        if kind is DrillEventKind.BEGIN_EVACUATION:
            if truth is SeverityClass.CONTROLLABLE:
                err(DrillErrorKind.PREMATURE_EVACUATION, "evacuated before extinguishing a controllable fire")
            return DrillPhase.EVACUATING, errors

    if phase is DrillPhase.SUPPRESSING:
        if kind is DrillEventKind.FIRE_EXTINGUISHED:
            return DrillPhase.EVACUATING, errors
        if kind is DrillEventKind.BEGIN_EVACUATION:
            # giving up on a controllable fire is the same decision error as
            # never trying; abandoning an imminent-threat fire is correct
            if truth is SeverityClass.CONTROLLABLE:
                err(DrillErrorKind.PREMATURE_EVACUATION, "abandoned suppression of a controllable fire")
            return DrillPhase.EVACUATING, errors

    if phase is DrillPhase.EVACUATING and kind is DrillEventKind.ARRIVE_AT_MUSTER:
        return DrillPhase.AT_MUSTER, errors

    err(DrillErrorKind.ACTION_OUT_OF_PHASE, f"{kind.value} has no effect during {phase.value}")
    return phase, errors


# ---------------------------------------------------------------------------
# Guidance messages


def _load_catalog() -> dict[str, str]:
    text = resources.files("firedrill.data").joinpath("guidance_messages.txt").read_text("utf-8")
    catalog: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        catalog[key.strip()] = value.strip()
    return catalog


_CATALOG: dict[str, str] | None = None


def guidance_catalog() -> dict[str, str]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _load_catalog()
    return _CATALOG


def next_required_task(phase: DrillPhase, spec: FireSpec, guidance_enabled: bool = True) -> str | None:
    """Hint for the next step of the drill, or None when guidance is off.

    Wording comes from the shipped message catalog so every client renders
    identical instructions.
    """
    if not guidance_enabled:
        return None
    catalog = guidance_catalog()
    if phase is DrillPhase.SEVERITY_ASSESSED:
        key = f"severity_assessed.{severity_class(spec).value}"
    else:
        key = phase.value
    return catalog.get(key)
