"""Scenario validation walkthrough.

Loads the four shipped levels, shows they satisfy every compliance rule,
then breaks one on purpose to show what findings look like.
"""

import copy
import json

from firedrill.scenario import builtin_level_bytes, builtin_levels, parse_scenario, validate_scenario

print("== shipped levels ==")
for scenario in builtin_levels():
    report = validate_scenario(scenario)
    print(f"{scenario.id}  {scenario.title!r:34} ok={report.ok}  findings={len(report.findings)}")

print()
print("== same ship, but someone removed the galley extinguisher ==")
doc = json.loads(builtin_level_bytes("L1"))
doc["layout"]["equipment"] = [e for e in doc["layout"]["equipment"] if e["id"] != "ext_galley"]
report = validate_scenario(parse_scenario(json.dumps(doc).encode()))
print(report.to_jsonl().strip())

print()
print("== and with no muster deck at all ==")
broken = copy.deepcopy(json.loads(builtin_level_bytes("L1")))
musters = {c["id"] for c in broken["layout"]["compartments"] if c["kind"] == "muster_area"}
broken["layout"]["compartments"] = [c for c in broken["layout"]["compartments"] if c["id"] not in musters]
broken["layout"]["passages"] = [
    p for p in broken["layout"]["passages"] if p["from"] not in musters and p["to"] not in musters
]
report = validate_scenario(parse_scenario(json.dumps(broken).encode()))
print(f"ok={report.ok}; {len(report.errors())} compartments without an escape route")
