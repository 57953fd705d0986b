from __future__ import annotations

import json
import pathlib

import pytest

from firedrill.engine import ActionCommand
from firedrill.scenario import builtin_level, builtin_level_bytes

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def levels():
    return {lid: builtin_level(lid) for lid in ("L1", "L2", "L3", "L4")}


@pytest.fixture(scope="session")
def level_docs():
    """Raw parsed JSON of the shipped level files, for mutation tests."""
    return {lid: json.loads(builtin_level_bytes(lid)) for lid in ("L1", "L2", "L3", "L4")}


def load_script(name: str) -> list[ActionCommand]:
    path = FIXTURES / "scripts" / f"{name}.jsonl"
    return [ActionCommand.from_obj(json.loads(line)) for line in path.read_text().splitlines() if line.strip()]


def load_golden(level_id: str) -> list[str]:
    path = FIXTURES / "golden" / f"{level_id}.golden.jsonl"
    return path.read_text().splitlines()


@pytest.fixture(scope="session")
def scripts():
    names = [
        "l1_happy",
        "l2_clean",
        "l3_happy",
        "l4_clean",
        "l2_suppression_attempt",
        "l3_premature_evacuation",
    ]
    return {name: load_script(name) for name in names}


@pytest.fixture(scope="session")
def golden_logs():
    return {lid: load_golden(lid) for lid in ("L1", "L2", "L3", "L4")}


@pytest.fixture(scope="session")
def cohort_fixture():
    profiles = (FIXTURES / "cohort" / "profiles.csv").read_text()
    times = (FIXTURES / "cohort" / "times.csv").read_text()
    return profiles, times
