"""Drill sessions end to end.

Runs the textbook agent through all four levels, then the two deviant agents
that reproduce the decision errors seen in user testing, and prints each
session's evaluation.
"""

from firedrill.agents import (
    happy_path_policy,
    premature_evacuation_policy,
    run_policy,
    suppression_attempt_policy,
)
from firedrill.scenario import builtin_level
from firedrill.scoring import emit_report, score_session


def show(tag, level_id, policy):
    session, commands = run_policy(builtin_level(level_id), policy, seed=0)
    report = score_session(session)
    errors = ", ".join(e.kind.value for e in report.errors) or "none"
    print(f"--- {tag} on {level_id}: {len(commands)} commands, {report.total_time_s:.1f}s, errors: {errors}")
    print(emit_report(report, "table").decode().rstrip())
    print()


for level in ("L1", "L2", "L3", "L4"):
    show("textbook drill", level, happy_path_policy)

show("fights the uncontrollable fire (testers 4/9)", "L2", suppression_attempt_policy())
show("skips suppression and runs (tester 8)", "L3", premature_evacuation_policy)
