"""Deterministic ship fire-drill simulation engine.

Headless re-creation of a VR shipboard fire-drill trainer: a compartment-graph
ship, a single cue-emitting fire, the SOLAS drill procedure as a phase
machine, a fixed-timestep session engine with bit-exact replay, scoring and
cohort analytics, and a session server for interactive clients.
"""

from .drill import (
    DrillError,
    DrillErrorKind,
    DrillEvent,
    DrillEventKind,
    DrillPhase,
    TaskChecklist,
    assessment_verdict,
    next_required_task,
    phase_transition,
)
from .engine import (
    ENGINE_VERSION,
    TICK_S,
    WALK_SPEED_M_S,
    ActionCommand,
    ActionKind,
    DrillSession,
    SessionEvent,
    TraineeState,
    new_session,
    replay,
    run_script,
    state_hash,
    step,
)
from .fire import (
    INTENSITY_MAX,
    CueKind,
    FireSpec,
    FireState,
    FireStatus,
    SeverityClass,
    cues_at,
    fire_tick,
    ignite,
    severity_class,
)
from .layout import (
    Compartment,
    CompartmentKind,
    Equipment,
    EquipmentKind,
    Passage,
    ShipLayout,
    equipment_in,
    graph_distance,
    shortest_escape_route,
)
from .scenario import (
    ALARM_AUDIBLE_HOPS,
    BUILTIN_LEVEL_IDS,
    Finding,
    Scenario,
    ValidationReport,
    builtin_level,
    builtin_level_bytes,
    builtin_levels,
    parse_scenario,
    serialize_scenario,
    validate_scenario,
)
from .scoring import (
    CohortReport,
    ScoreReport,
    TesterProfile,
    cohort_analysis,
    emit_report,
    load_profiles,
    score_session,
)

__version__ = "1.0.0"

__all__ = [
    "ENGINE_VERSION",
    "TICK_S",
    "WALK_SPEED_M_S",
    "INTENSITY_MAX",
    "ALARM_AUDIBLE_HOPS",
    "BUILTIN_LEVEL_IDS",
    "ActionCommand",
    "ActionKind",
    "Compartment",
    "CompartmentKind",
    "CohortReport",
    "CueKind",
    "DrillError",
    "DrillErrorKind",
    "DrillEvent",
    "DrillEventKind",
    "DrillPhase",
    "DrillSession",
    "Equipment",
    "EquipmentKind",
    "Finding",
    "FireSpec",
    "FireState",
    "FireStatus",
    "Passage",
    "Scenario",
    "ScoreReport",
    "SessionEvent",
    "SeverityClass",
    "ShipLayout",
    "TaskChecklist",
    "TesterProfile",
    "TraineeState",
    "ValidationReport",
    "assessment_verdict",
    "builtin_level",
    "builtin_level_bytes",
    "builtin_levels",
    "cohort_analysis",
    "cues_at",
    "emit_report",
    "equipment_in",
    "fire_tick",
    "graph_distance",
    "ignite",
    "load_profiles",
    "new_session",
    "next_required_task",
    "parse_scenario",
    "phase_transition",
    "replay",
    "run_script",
    "score_session",
    "serialize_scenario",
    "severity_class",
    "shortest_escape_route",
    "state_hash",
    "step",
    "validate_scenario",
]
