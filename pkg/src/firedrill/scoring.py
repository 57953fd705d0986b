"""Session evaluation and cohort analytics.

A session is graded on three separate axes: time (total and per drill
phase), task completion (the checklist) and decisions (the error list).
No composite scalar is computed; the components stay separate.

Cohort analysis compares per-level times against a reference tester and
summarises deltas for two groups split by gaming experience: High counts as
an experienced gamer, Low and Medium do not.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass
from enum import Enum

from .drill import DrillError, DrillErrorKind, DrillPhase, TaskChecklist
from .errors import MissingReference, SessionStillOpen

EXPERIENCED_GROUP = "experienced_gamers"
NON_EXPERIENCED_GROUP = "non_experienced_gamers"


class Experience(str, Enum):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


@dataclass(frozen=True)
class TesterProfile:
    tester_id: str
    exp_fire_drills: Experience
    exp_vr: Experience
    exp_games: Experience

    @property
    def experienced_gamer(self) -> bool:
        return self.exp_games is Experience.HIGH


@dataclass
class ScoreReport:
    scenario_id: str
    total_time_s: float
    per_phase_time_s: dict[str, float]
    checklist: TaskChecklist
    errors: list[DrillError]
    completed: bool

    def to_obj(self) -> dict:
        return {
            "scenario_id": self.scenario_id,
            "total_time_s": self.total_time_s,
            "per_phase_time_s": dict(self.per_phase_time_s),
            "checklist": {
                "discovered": self.checklist.discovered,
                "reported": self.checklist.reported,
                "alarm_raised": self.checklist.alarm_raised,
                "assessed": self.checklist.assessed,
                "assessment_correct": self.checklist.assessment_correct,
                "suppression_done_or_correctly_skipped": self.checklist.suppression_done_or_correctly_skipped,
                "mustered": self.checklist.mustered,
            },
            "errors": [{"kind": e.kind.value, "tick": e.tick, "detail": e.detail} for e in self.errors],
            "completed": self.completed,
        }

    @staticmethod
    def from_obj(obj: dict) -> "ScoreReport":
        checklist = TaskChecklist(**obj["checklist"])
        errors = [DrillError(kind=DrillErrorKind(e["kind"]), tick=e["tick"], detail=e["detail"]) for e in obj["errors"]]
        return ScoreReport(
            scenario_id=obj["scenario_id"],
            total_time_s=obj["total_time_s"],
            per_phase_time_s=dict(obj["per_phase_time_s"]),
            checklist=checklist,
            errors=errors,
            completed=obj["completed"],
        )


@dataclass
class GroupSummary:
    max_delta_s: float
    mean_delta_s: float
    count: int


@dataclass
class CohortReport:
    reference_tester: str
    per_tester_level_times: dict[str, dict[str, float]]
    deltas_vs_reference: dict[str, dict[str, float]]
    group_summaries: dict[str, dict[str, GroupSummary]]

    def to_obj(self) -> dict:
        return {
            "reference_tester": self.reference_tester,
            "per_tester_level_times": self.per_tester_level_times,
            "deltas_vs_reference": self.deltas_vs_reference,
            "group_summaries": {
                group: {
                    level: {"max_delta_s": s.max_delta_s, "mean_delta_s": s.mean_delta_s, "count": s.count}
                    for level, s in levels.items()
                }
                for group, levels in self.group_summaries.items()
            },
        }


def tester_sort_key(tester_id: str):
    # Table-style ordering: numeric ids sort numerically ("2" before "10")
    return (0, int(tester_id), "") if tester_id.isdigit() else (1, 0, tester_id)


# ---------------------------------------------------------------------------
# Per-session scoring


def score_session(session) -> ScoreReport:
    """Grade one finished session; times come solely from the event log."""
    from .engine import TICK_S  # local import to avoid a module cycle

    if not session.finished:
        raise SessionStillOpen("session has no session_finished event; close it first")

    total_ticks = session.tick
    for event in session.log:
        if event.kind == "session_finished":
            total_ticks = event.payload["total_ticks"]

    segments: list[tuple[str, int]] = [(DrillPhase.PATROL.value, 0)]
    for event in session.log:
        if event.kind == "phase_changed":
            segments.append((event.payload["to"], event.payload["at_tick"]))

    per_phase: dict[str, float] = {}
    for (phase, start), (_, end) in zip(segments, segments[1:] + [("", total_ticks)]):
        ticks = max(0, end - start)
        per_phase[phase] = round(per_phase.get(phase, 0.0) + ticks * TICK_S, 3)

    return ScoreReport(
        scenario_id=session.scenario.id,
        total_time_s=round(total_ticks * TICK_S, 3),
        per_phase_time_s=per_phase,
        checklist=session.checklist,
        errors=list(session.errors),
        completed=session.phase is DrillPhase.COMPLETE,
    )


# ---------------------------------------------------------------------------
# Cohort analytics


def load_profiles(text: str) -> list[TesterProfile]:
    """Parse the tester profile CSV (tester_id,exp_fire_drills,exp_vr,exp_games)."""
    reader = csv.DictReader(io.StringIO(text))
    expected = ["tester_id", "exp_fire_drills", "exp_vr", "exp_games"]
    if reader.fieldnames != expected:
        raise ValueError(f"profile CSV header must be {','.join(expected)}")
    profiles = []
    for row in reader:
        profiles.append(
            TesterProfile(
                tester_id=row["tester_id"].strip(),
                exp_fire_drills=Experience(row["exp_fire_drills"].strip()),
                exp_vr=Experience(row["exp_vr"].strip()),
                exp_games=Experience(row["exp_games"].strip()),
            )
        )
    return profiles


def cohort_analysis(
    reports: list[tuple[TesterProfile, str, ScoreReport]],
    reference_tester: str,
) -> CohortReport:
    """Per-level time deltas against the reference tester, summarised per group.

    Grouping uses gaming experience only; the profile keeps the other fields
    for display.
    """
    times: dict[str, dict[str, float]] = {}
    profiles: dict[str, TesterProfile] = {}
    for profile, level, report in reports:
        profiles[profile.tester_id] = profile
        times.setdefault(profile.tester_id, {})[level] = report.total_time_s

    levels = sorted({level for by_level in times.values() for level in by_level})
    reference_times = times.get(reference_tester, {})
    for level in levels:
        if level not in reference_times:
            raise MissingReference(level)

    deltas: dict[str, dict[str, float]] = {}
    for tester, by_level in times.items():
        deltas[tester] = {
            level: round(t - reference_times[level], 6) for level, t in by_level.items()
        }

    summaries: dict[str, dict[str, GroupSummary]] = {EXPERIENCED_GROUP: {}, NON_EXPERIENCED_GROUP: {}}
    for level in levels:
        grouped: dict[str, list[float]] = {EXPERIENCED_GROUP: [], NON_EXPERIENCED_GROUP: []}
        for tester, by_level in deltas.items():
            if level not in by_level:
                continue
            group = EXPERIENCED_GROUP if profiles[tester].experienced_gamer else NON_EXPERIENCED_GROUP
            grouped[group].append(by_level[level])
        for group, values in grouped.items():
            if values:
                summaries[group][level] = GroupSummary(
                    max_delta_s=max(values),
                    mean_delta_s=round(statistics.mean(values), 6),
                    count=len(values),
                )

    ordered_testers = sorted(times, key=tester_sort_key)
    return CohortReport(
        reference_tester=reference_tester,
        per_tester_level_times={t: dict(sorted(times[t].items())) for t in ordered_testers},
        deltas_vs_reference={t: dict(sorted(deltas[t].items())) for t in ordered_testers},
        group_summaries=summaries,
    )


# ---------------------------------------------------------------------------
# Rendering


def _score_rows(report: ScoreReport) -> list[tuple[str, str]]:
    rows = [
        ("scenario", report.scenario_id),
        ("completed", "yes" if report.completed else "no"),
        ("total_time_s", f"{report.total_time_s:.1f}"),
    ]
    for phase, seconds in report.per_phase_time_s.items():
        rows.append((f"time[{phase}]", f"{seconds:.1f}"))
    for name, done in report.to_obj()["checklist"].items():
        rows.append((f"task[{name}]", "yes" if done else "no"))
    if report.errors:
        for i, err in enumerate(report.errors):
            rows.append((f"error[{i}]", f"{err.kind.value} @ tick {err.tick}"))
    else:
        rows.append(("errors", "none"))
    return rows


def emit_report(report: ScoreReport | CohortReport, fmt: str = "json") -> bytes:
    """Render a report as json, csv or an aligned text table."""
    if fmt not in ("json", "table", "csv"):
        raise ValueError(f"unknown report format {fmt!r}")

    if isinstance(report, ScoreReport):
        if fmt == "json":
            return (json.dumps(report.to_obj(), indent=2, sort_keys=True) + "\n").encode("utf-8")
        if fmt == "csv":
            out = io.StringIO()
            writer = csv.writer(out)
            writer.writerow(["field", "value"])
            writer.writerows(_score_rows(report))
            return out.getvalue().encode("utf-8")
        width = max(len(k) for k, _ in _score_rows(report))
        lines = [f"{k.ljust(width)}  {v}" for k, v in _score_rows(report)]
        return ("\n".join(lines) + "\n").encode("utf-8")

    if fmt == "json":
        return (json.dumps(report.to_obj(), indent=2, sort_keys=True) + "\n").encode("utf-8")

    rows: list[tuple[str, str, float, float]] = []
    for tester in sorted(report.per_tester_level_times, key=tester_sort_key):
        for level in sorted(report.per_tester_level_times[tester]):
            rows.append(
                (
                    tester,
                    level,
                    report.per_tester_level_times[tester][level],
                    report.deltas_vs_reference[tester][level],
                )
            )

    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["tester", "level", "time_s", "delta_s"])
        for tester, level, time_s, delta_s in rows:
            writer.writerow([tester, level, f"{time_s:g}", f"{delta_s:g}"])
        return out.getvalue().encode("utf-8")

    lines = [f"reference tester: {report.reference_tester}", ""]
    lines.append(f"{'tester':>8}  {'level':>5}  {'time_s':>8}  {'delta_s':>8}")
    for tester, level, time_s, delta_s in rows:
        lines.append(f"{tester:>8}  {level:>5}  {time_s:>8g}  {delta_s:>+8g}")
    lines.append("")
    for group, levels in report.group_summaries.items():
        for level, summary in sorted(levels.items()):
            lines.append(
                f"{group}  {level}  max_delta={summary.max_delta_s:g}s  "
                f"mean_delta={summary.mean_delta_s:g}s  n={summary.count}"
            )
    return ("\n".join(lines) + "\n").encode("utf-8")
