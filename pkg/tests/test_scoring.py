from __future__ import annotations

import csv
import io
import json

import pytest

from firedrill.engine import finish_session, new_session, replay, run_script
from firedrill.errors import MissingReference, SessionStillOpen
from firedrill.scoring import (
    EXPERIENCED_GROUP,
    NON_EXPERIENCED_GROUP,
    Experience,
    ScoreReport,
    TaskChecklist,
    TesterProfile as Profile,
    cohort_analysis,
    emit_report,
    load_profiles,
    score_session,
)

from .oracles import spreadsheet_group_max_deltas


def stub_report(level: str, seconds: float) -> ScoreReport:
    return ScoreReport(
        scenario_id=level,
        total_time_s=seconds,
        per_phase_time_s={},
        checklist=TaskChecklist(),
        errors=[],
        completed=True,
    )


def profile(tester: str, games: str = "High") -> Profile:
    return Profile(tester, Experience.LOW, Experience.LOW, Experience(games))


def fixture_entries(cohort_fixture):
    profiles_csv, times_csv = cohort_fixture
    profiles = {p.tester_id: p for p in load_profiles(profiles_csv)}
    entries = []
    for row in csv.DictReader(io.StringIO(times_csv)):
        entries.append((profiles[row["tester_id"]], row["level"], stub_report(row["level"], float(row["time_s"]))))
    return entries


class TestScoreSession:
    def test_l1_happy_path(self, levels, scripts):
        session, _ = run_script(levels["L1"], scripts["l1_happy"], seed=0)
        report = score_session(session)
        assert report.completed is True
        assert report.errors == []
        assert report.per_phase_time_s["suppressing"] == 45.0
        assert report.scenario_id == "L1"

    def test_tester8_style_l3_run(self, levels, scripts):
        session, _ = run_script(levels["L3"], scripts["l3_premature_evacuation"], seed=0)
        report = score_session(session)
        assert report.completed is True
        assert [e.kind.value for e in report.errors] == ["premature_evacuation"]
        assert "suppressing" not in report.per_phase_time_s

    def test_empty_session(self, levels):
        session = new_session(levels["L1"], seed=0)
        finish_session(session)
        report = score_session(session)
        assert report.total_time_s == 0.0
        assert not any(vars(report.checklist).values())
        assert report.completed is False

    def test_open_session_rejected(self, levels):
        session = new_session(levels["L1"], seed=0)
        with pytest.raises(SessionStillOpen):
            score_session(session)

    def test_score_is_pure_function_of_log(self, levels, scripts):
        session, original = run_script(levels["L2"], scripts["l2_suppression_attempt"], seed=0)
        replayed = replay(session.log_lines(), levels["L2"])
        again = score_session(replayed)
        assert again.to_obj() == original.to_obj()


class TestCohortAnalysis:
    def test_fixture_reproduces_published_group_maxima(self, cohort_fixture):
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        exp = cohort.group_summaries[EXPERIENCED_GROUP]
        non = cohort.group_summaries[NON_EXPERIENCED_GROUP]
        assert [exp[l].max_delta_s for l in ("L1", "L2", "L3", "L4")] == [52, 39, 102, 34]
        assert [non[l].max_delta_s for l in ("L1", "L2", "L3", "L4")] == [188, 129, 121, 79]

    def test_fixture_matches_spreadsheet_oracle(self, cohort_fixture):
        profiles_csv, times_csv = cohort_fixture
        oracle = spreadsheet_group_max_deltas(profiles_csv, times_csv, reference="1")
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        for level in ("L1", "L2", "L3", "L4"):
            assert cohort.group_summaries[EXPERIENCED_GROUP][level].max_delta_s == oracle["experienced"][level]
            assert cohort.group_summaries[NON_EXPERIENCED_GROUP][level].max_delta_s == oracle["non_experienced"][level]

    def test_reference_deltas_are_zero(self, cohort_fixture):
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        assert all(d == 0 for d in cohort.deltas_vs_reference["1"].values())

    def test_single_tester_reference(self):
        entries = [(profile("1"), "L1", stub_report("L1", 100.0)), (profile("1"), "L2", stub_report("L2", 80.0))]
        cohort = cohort_analysis(entries, reference_tester="1")
        assert cohort.deltas_vs_reference == {"1": {"L1": 0.0, "L2": 0.0}}

    def test_identical_times_give_zero_delta(self):
        entries = [
            (profile("1"), "L1", stub_report("L1", 100.0)),
            (profile("2", "Low"), "L1", stub_report("L1", 100.0)),
        ]
        cohort = cohort_analysis(entries, reference_tester="1")
        assert cohort.deltas_vs_reference["2"]["L1"] == 0.0

    def test_missing_reference(self):
        entries = [(profile("2", "Low"), "L1", stub_report("L1", 100.0))]
        with pytest.raises(MissingReference):
            cohort_analysis(entries, reference_tester="1")

    def test_reference_swap_shifts_deltas_by_constant(self, cohort_fixture):
        entries = fixture_entries(cohort_fixture)
        by_a = cohort_analysis(entries, reference_tester="1")
        by_b = cohort_analysis(entries, reference_tester="3")
        for level in ("L1", "L2", "L3", "L4"):
            shift = by_a.per_tester_level_times["3"][level] - by_a.per_tester_level_times["1"][level]
            for tester in by_a.deltas_vs_reference:
                assert by_b.deltas_vs_reference[tester][level] == pytest.approx(
                    by_a.deltas_vs_reference[tester][level] - shift
                )

    def test_group_partition_is_total(self, cohort_fixture):
        profiles_csv, _ = cohort_fixture
        profiles = load_profiles(profiles_csv)
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        for level in ("L1", "L2", "L3", "L4"):
            total = (
                cohort.group_summaries[EXPERIENCED_GROUP][level].count
                + cohort.group_summaries[NON_EXPERIENCED_GROUP][level].count
            )
            assert total == len(profiles)
        assert all(p.experienced_gamer == (p.exp_games is Experience.HIGH) for p in profiles)

    def test_medium_gamer_counts_as_non_experienced(self):
        entries = [
            (profile("1"), "L1", stub_report("L1", 100.0)),
            (profile("2", "Medium"), "L1", stub_report("L1", 130.0)),
        ]
        cohort = cohort_analysis(entries, reference_tester="1")
        assert cohort.group_summaries[NON_EXPERIENCED_GROUP]["L1"].max_delta_s == 30.0


class TestEmitReport:
    def test_score_json_round_trips(self, levels, scripts):
        _, report = run_script(levels["L1"], scripts["l1_happy"], seed=0)
        parsed = json.loads(emit_report(report, "json"))
        assert ScoreReport.from_obj(parsed).to_obj() == report.to_obj()

    def test_cohort_csv_contract(self, cohort_fixture):
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        lines = emit_report(cohort, "csv").decode("utf-8").splitlines()
        assert lines[0] == "tester,level,time_s,delta_s"
        rows = [line.split(",") for line in lines[1:]]
        testers = [r[0] for r in rows]
        assert testers == sorted(testers, key=lambda t: (int(t), t))

    def test_cohort_table_orders_testers_numerically(self, cohort_fixture):
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        text = emit_report(cohort, "table").decode("utf-8")
        pos = [text.index(f"\n{t:>8}  ") for t in ("1", "2", "9", "10")]
        assert pos == sorted(pos)

    def test_unknown_format_rejected(self, cohort_fixture):
        cohort = cohort_analysis(fixture_entries(cohort_fixture), reference_tester="1")
        with pytest.raises(ValueError):
            emit_report(cohort, "xml")

    def test_profiles_vocabulary_enforced(self):
        bad = "tester_id,exp_fire_drills,exp_vr,exp_games\n1,High,Low,Sometimes\n"
        with pytest.raises(ValueError):
            load_profiles(bad)
