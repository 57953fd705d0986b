"""Regenerate committed test fixtures: reference scripts, golden logs, cohort data.

Run from the repo root:
    python tools/generate_fixtures.py

Golden logs pin engine behaviour across versions; regenerate them only when a
deliberate engine change invalidates them, and say so in the commit.
"""

from __future__ import annotations

import json
import pathlib

from firedrill.agents import (
    happy_path_policy,
    premature_evacuation_policy,
    run_policy,
    suppression_attempt_policy,
)
from firedrill.scenario import builtin_level

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# the per-level reference scripts: textbook behaviour for every level, plus
# the three deviant agents matching the user-evaluation errors
AGENTS = {
    "l1_happy": ("L1", happy_path_policy),
    "l2_clean": ("L2", happy_path_policy),
    "l3_happy": ("L3", happy_path_policy),
    "l4_clean": ("L4", happy_path_policy),
    "l2_suppression_attempt": ("L2", suppression_attempt_policy()),
    "l3_premature_evacuation": ("L3", premature_evacuation_policy),
}

GOLDEN = {"L1": "l1_happy", "L2": "l2_clean", "L3": "l3_happy", "L4": "l4_clean"}

SEED = 0


def main() -> None:
    scripts_dir = FIXTURES / "scripts"
    golden_dir = FIXTURES / "golden"
    scripts_dir.mkdir(parents=True, exist_ok=True)
    golden_dir.mkdir(parents=True, exist_ok=True)

    logs: dict[str, list[str]] = {}
    for name, (level_id, policy) in AGENTS.items():
        scenario = builtin_level(level_id)
        session, commands = run_policy(scenario, policy, seed=SEED)
        script_path = scripts_dir / f"{name}.jsonl"
        script_path.write_text(
            "\n".join(json.dumps(c.to_obj(), sort_keys=True) for c in commands) + "\n",
            encoding="utf-8",
        )
        logs[name] = session.log_lines()
        print(f"{name}: {len(commands)} commands, {session.tick} ticks, errors={[e.kind.value for e in session.errors]}")

    for level_id, agent_name in GOLDEN.items():
        golden_path = golden_dir / f"{level_id}.golden.jsonl"
        golden_path.write_text("\n".join(logs[agent_name]) + "\n", encoding="utf-8")
        print(f"golden {level_id}: {len(logs[agent_name])} events")


if __name__ == "__main__":
    main()
