from __future__ import annotations

import itertools

import pytest

from firedrill.drill import (
    PHASE_RANK,
    DrillErrorKind,
    DrillEvent,
    DrillEventKind,
    DrillPhase,
    TaskChecklist,
    assessment_verdict,
    guidance_catalog,
    next_required_task,
    phase_transition,
)
from firedrill.errors import InvalidEvent
from firedrill.fire import SeverityClass


def ev(kind: DrillEventKind, severity: SeverityClass | None = None) -> DrillEvent:
    return DrillEvent(kind, severity)


class TestTransitions:
    def test_happy_sequence_for_controllable_fire(self, levels):
        spec = levels["L1"].fire
        phase = DrillPhase.PATROL
        sequence = [
            (DrillEventKind.PERCEIVE_CUE, DrillPhase.FIRE_DISCOVERED),
            (DrillEventKind.REPORT_VIA_PHONE, DrillPhase.REPORTED),
            (DrillEventKind.ACTIVATE_ALARM, DrillPhase.ALARM_RAISED),
            (DrillEventKind.SUBMIT_ASSESSMENT, DrillPhase.SEVERITY_ASSESSED),
            (DrillEventKind.BEGIN_SUPPRESSION, DrillPhase.SUPPRESSING),
            (DrillEventKind.FIRE_EXTINGUISHED, DrillPhase.EVACUATING),
            (DrillEventKind.ARRIVE_AT_MUSTER, DrillPhase.AT_MUSTER),
        ]
        for kind, expected in sequence:
            severity = SeverityClass.CONTROLLABLE if kind is DrillEventKind.SUBMIT_ASSESSMENT else None
            phase, errors = phase_transition(phase, ev(kind, severity), spec)
            assert phase is expected
            assert errors == []

    def test_premature_evacuation_on_controllable_fire(self, levels):
        phase, errors = phase_transition(
            DrillPhase.SEVERITY_ASSESSED, ev(DrillEventKind.BEGIN_EVACUATION), levels["L3"].fire
        )
        assert phase is DrillPhase.EVACUATING
        assert [e.kind for e in errors] == [DrillErrorKind.PREMATURE_EVACUATION]

    def test_suppression_attempt_on_imminent_fire(self, levels):
        phase, errors = phase_transition(
            DrillPhase.SEVERITY_ASSESSED, ev(DrillEventKind.BEGIN_SUPPRESSION), levels["L2"].fire
        )
        assert phase is DrillPhase.SUPPRESSING
        assert [e.kind for e in errors] == [DrillErrorKind.EXTINGUISH_ATTEMPT_ON_IMMINENT_FIRE]

    def test_first_cue_from_patrol(self, levels):
        phase, errors = phase_transition(DrillPhase.PATROL, ev(DrillEventKind.PERCEIVE_CUE), levels["L4"].fire)
        assert phase is DrillPhase.FIRE_DISCOVERED
        assert errors == []

    def test_no_edge_means_out_of_phase(self, levels):
        phase, errors = phase_transition(DrillPhase.PATROL, ev(DrillEventKind.ARRIVE_AT_MUSTER), levels["L1"].fire)
        assert phase is DrillPhase.PATROL
        assert [e.kind for e in errors] == [DrillErrorKind.ACTION_OUT_OF_PHASE]

    def test_alarm_first_is_tolerated_but_logged(self, levels):
        phase, errors = phase_transition(
            DrillPhase.FIRE_DISCOVERED, ev(DrillEventKind.ACTIVATE_ALARM), levels["L1"].fire
        )
        assert phase is DrillPhase.ALARM_RAISED
        assert [e.kind for e in errors] == [DrillErrorKind.ALARM_BEFORE_REPORT]
        # a late report is then accepted quietly
        phase, errors = phase_transition(phase, ev(DrillEventKind.REPORT_VIA_PHONE), levels["L1"].fire)
        assert phase is DrillPhase.ALARM_RAISED
        assert errors == []

    def test_abandoning_imminent_fire_is_correct(self, levels):
        phase, errors = phase_transition(
            DrillPhase.SUPPRESSING, ev(DrillEventKind.BEGIN_EVACUATION), levels["L2"].fire
        )
        assert phase is DrillPhase.EVACUATING
        assert errors == []

    def test_abandoning_controllable_fire_is_premature(self, levels):
        phase, errors = phase_transition(
            DrillPhase.SUPPRESSING, ev(DrillEventKind.BEGIN_EVACUATION), levels["L1"].fire
        )
        assert phase is DrillPhase.EVACUATING
        assert [e.kind for e in errors] == [DrillErrorKind.PREMATURE_EVACUATION]

    def test_malformed_event_rejected(self, levels):
        with pytest.raises(InvalidEvent):
            phase_transition(DrillPhase.PATROL, "perceive_cue", levels["L1"].fire)  # type: ignore[arg-type]
        with pytest.raises(InvalidEvent):
            DrillEvent(DrillEventKind.SUBMIT_ASSESSMENT)  # missing severity

    def test_phase_never_moves_backward(self, levels):
        for spec in (levels["L1"].fire, levels["L2"].fire):
            for phase, kind in itertools.product(DrillPhase, DrillEventKind):
                severity = SeverityClass.CONTROLLABLE if kind is DrillEventKind.SUBMIT_ASSESSMENT else None
                new_phase, _ = phase_transition(phase, ev(kind, severity), spec)
                assert PHASE_RANK[new_phase] >= PHASE_RANK[phase]


class TestAssessmentVerdict:
    def test_controllable_correct_for_l1(self, levels):
        assert assessment_verdict(SeverityClass.CONTROLLABLE, levels["L1"].fire) is True

    def test_controllable_wrong_for_l4(self, levels):
        assert assessment_verdict(SeverityClass.CONTROLLABLE, levels["L4"].fire) is False

    def test_imminent_correct_for_inextinguishable(self):
        from firedrill.fire import FireSpec

        spec = FireSpec("galley", 1.0, 0.0, False, 1.0, 1)
        assert assessment_verdict(SeverityClass.IMMINENT_THREAT, spec) is True


class TestGuidance:
    def test_fixed_wording_after_discovery(self, levels):
        hint = next_required_task(DrillPhase.FIRE_DISCOVERED, levels["L1"].fire, True)
        assert hint == "Inform the ship master using the nearest emergency phone"

    def test_fixed_wording_after_report(self, levels):
        assert next_required_task(DrillPhase.REPORTED, levels["L1"].fire, True) == "Activate the fire alarm"

    def test_disabled_returns_none_for_every_phase(self, levels):
        for phase in DrillPhase:
            assert next_required_task(phase, levels["L3"].fire, False) is None

    def test_severity_branch_uses_fire_truth(self, levels):
        controllable = next_required_task(DrillPhase.SEVERITY_ASSESSED, levels["L1"].fire, True)
        imminent = next_required_task(DrillPhase.SEVERITY_ASSESSED, levels["L2"].fire, True)
        assert controllable != imminent
        assert "extinguisher" in controllable.lower()
        assert "evacuate" in imminent.lower()

    def test_catalog_covers_every_phase(self):
        catalog = guidance_catalog()
        for phase in DrillPhase:
            if phase is DrillPhase.SEVERITY_ASSESSED:
                assert "severity_assessed.controllable" in catalog
                assert "severity_assessed.imminent_threat" in catalog
            else:
                assert phase.value in catalog


class TestChecklist:
    def test_ratchet_marks_stages_passed(self):
        checklist = TaskChecklist()
        checklist.ratchet_to(DrillPhase.ALARM_RAISED)
        assert checklist.discovered and checklist.reported and checklist.alarm_raised
        assert not checklist.assessed and not checklist.mustered

    def test_ratchet_is_monotone(self):
        checklist = TaskChecklist()
        checklist.ratchet_to(DrillPhase.COMPLETE)
        before = vars(checklist).copy()
        checklist.ratchet_to(DrillPhase.PATROL)
        assert vars(checklist) == before
