"""Deterministic replay, demonstrated.

Runs the same script twice (byte-identical logs), replays the log to the
same state hash, then flips one byte and watches replay catch it.
"""

import tempfile

from firedrill.agents import happy_path_policy, script_for
from firedrill.engine import replay, run_script, state_hash
from firedrill.errors import ReplayDivergence
from firedrill.scenario import builtin_level

scenario = builtin_level("L3")
script = script_for(scenario, happy_path_policy, seed=0)

first, _ = run_script(scenario, script, seed=0)
second, _ = run_script(scenario, script, seed=0)
print(f"two runs, identical logs: {first.log_lines() == second.log_lines()}")
print(f"state hash: {state_hash(first)}")

lines = first.log_lines()
replayed = replay(lines, scenario)
print(f"replay reproduces the hash: {state_hash(replayed) == state_hash(first)}")

tampered = list(lines)
tampered[10] = tampered[10].replace('"tick":', '"tick": ', 1)  # one inserted space
try:
    replay(tampered, scenario)
    print("tampered log slipped through (bug!)")
except ReplayDivergence as exc:
    print(f"tampered log rejected: diverged at tick {exc.tick}")

with tempfile.NamedTemporaryFile("w", suffix=".jsonl", delete=False) as f:
    f.write("\n".join(lines) + "\n")
    print(f"log written to {f.name} (try: firedrill replay {f.name} --scenario <L3 file>)")
