"""Cohort analytics over the committed tester fixture.

Reproduces the user-evaluation analysis shape: per-tester level times, deltas
against the reference tester, and group summaries split by gaming
experience. Also draws the time-per-level-per-tester bar chart and saves it
next to this script.
"""

import csv
import io
import pathlib

from firedrill.scoring import (
    EXPERIENCED_GROUP,
    NON_EXPERIENCED_GROUP,
    ScoreReport,
    TaskChecklist,
    cohort_analysis,
    emit_report,
    load_profiles,
    tester_sort_key,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "cohort"

profiles = {p.tester_id: p for p in load_profiles((FIXTURES / "profiles.csv").read_text())}
entries = []
for row in csv.DictReader(io.StringIO((FIXTURES / "times.csv").read_text())):
    report = ScoreReport(
        scenario_id=row["level"],
        total_time_s=float(row["time_s"]),
        per_phase_time_s={},
        checklist=TaskChecklist(),
        errors=[],
        completed=True,
    )
    entries.append((profiles[row["tester_id"]], row["level"], report))

cohort = cohort_analysis(entries, reference_tester="1")
print(emit_report(cohort, "table").decode())

print("slowest experienced gamers vs reference: ",
      [cohort.group_summaries[EXPERIENCED_GROUP][l].max_delta_s for l in ("L1", "L2", "L3", "L4")])
print("slowest non-experienced gamers vs reference:",
      [cohort.group_summaries[NON_EXPERIENCED_GROUP][l].max_delta_s for l in ("L1", "L2", "L3", "L4")])

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit("matplotlib not installed; skipping the chart")

testers = sorted(cohort.per_tester_level_times, key=tester_sort_key)
levels = ["L1", "L2", "L3", "L4"]
fig, ax = plt.subplots(figsize=(10, 4.5))
width = 0.2
for i, level in enumerate(levels):
    xs = [t_i + (i - 1.5) * width for t_i in range(len(testers))]
    ax.bar(xs, [cohort.per_tester_level_times[t][level] for t in testers], width=width, label=level)
ax.set_xticks(range(len(testers)), testers)
ax.set_xlabel("tester")
ax.set_ylabel("time spent (s)")
ax.set_title("Time spent on each level per tester (synthetic fixture)")
ax.legend()
out = pathlib.Path(__file__).with_name("cohort_times.png")
fig.tight_layout()
fig.savefig(out, dpi=120)
print(f"chart saved to {out}")
