"""Single-fire model: intensity growth, extinguishing work, emitted cues.

Extinguishing is a work budget: an extinguishable fire goes out once the
agent has been applied, in the fire's own compartment, for a cumulative
extinguish_work_s seconds. Intensity is severity flavour for display and
never gates extinguishing. Work never regenerates when application stops.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import FireAlreadyOut
from .layout import ShipLayout, graph_distance

INTENSITY_MAX = 100.0

# Cumulative float error after thousands of dt subtractions can leave a
# remainder around 1e-15 either side of zero; snap so the work budget costs
# exactly ceil(work / dt) application ticks.
_WORK_EPS_S = 1e-9


class FireStatus(str, Enum):
    BURNING = "burning"
    EXTINGUISHED = "extinguished"


class SeverityClass(str, Enum):
    CONTROLLABLE = "controllable"
    IMMINENT_THREAT = "imminent_threat"


class CueKind(str, Enum):
    VISUAL = "visual"
    AUDITORY = "auditory"


@dataclass(frozen=True)
class FireSpec:
    compartment: str
    initial_intensity: float
    growth_rate: float
    extinguishable: bool
    extinguish_work_s: float
    audible_hops: int

    def __post_init__(self) -> None:
        if self.initial_intensity < 0:
            raise ValueError("initial_intensity must be >= 0")
        if self.growth_rate < 0:
            raise ValueError("growth_rate must be >= 0")
        if self.extinguish_work_s <= 0:
            raise ValueError("extinguish_work_s must be > 0")
        if self.audible_hops < 1:
            raise ValueError("audible_hops must be >= 1 (a fire is audible in its own compartment)")


@dataclass(frozen=True)
class FireState:
    spec: FireSpec
    intensity: float
    remaining_work_s: float
    status: FireStatus


def ignite(spec: FireSpec) -> FireState:
    return FireState(
        spec=spec,
        intensity=min(spec.initial_intensity, INTENSITY_MAX),
        remaining_work_s=spec.extinguish_work_s,
        status=FireStatus.BURNING,
    )


def severity_class(spec: FireSpec) -> SeverityClass:
    """Controllable iff the fire can be put out at all."""
    return SeverityClass.CONTROLLABLE if spec.extinguishable else SeverityClass.IMMINENT_THREAT


def fire_tick(
    state: FireState,
    dt: float,
    agent_applied: bool,
    applier_compartment: str,
) -> FireState:
    """Advance the fire by dt seconds.

    Work depletes only while the agent is applied from inside the fire's
    compartment and the fire is extinguishable; an inextinguishable fire's
    remaining_work_s never changes.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if state.status is not FireStatus.BURNING:
        raise FireAlreadyOut("fire_tick on an extinguished fire")

    intensity = min(max(state.intensity + state.spec.growth_rate * dt, 0.0), INTENSITY_MAX)
    remaining = state.remaining_work_s
    status = state.status

    effective = (
        agent_applied
        and state.spec.extinguishable
        and applier_compartment == state.spec.compartment
    )
    if effective:
        remaining = max(0.0, remaining - dt)
        if remaining < _WORK_EPS_S:
            remaining = 0.0
            status = FireStatus.EXTINGUISHED

    return replace(state, intensity=intensity, remaining_work_s=remaining, status=status)


def cues_at(state: FireState, layout: ShipLayout, observer: str) -> set[CueKind]:
    """Cue kinds an observer perceives: flames in the room, sound within range."""
    if state.status is not FireStatus.BURNING:
        raise FireAlreadyOut("an extinguished fire emits no cues")
    distance = graph_distance(layout, observer, state.spec.compartment)
    cues: set[CueKind] = set()
    if distance == 0:
        cues.add(CueKind.VISUAL)
    if distance <= state.spec.audible_hops:
        cues.add(CueKind.AUDITORY)
    return cues
