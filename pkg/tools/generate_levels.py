"""Regenerate the four shipped level files from one layout definition.

Run from the repo root after changing the reference ship plan:
    python tools/generate_levels.py
"""

from __future__ import annotations

import pathlib

from firedrill.fire import FireSpec
from firedrill.layout import Compartment, CompartmentKind, Equipment, EquipmentKind, Passage, ShipLayout
from firedrill.scenario import Scenario, serialize_scenario, validate_scenario

K = CompartmentKind
E = EquipmentKind

# Reference tween-decker plan, flattened to a compartment graph. Dimensions
# are plausible fixtures, not measurements of a real vessel.
COMPARTMENTS = [
    Compartment("bridge", K.BRIDGE, "Bridge", 20.0, 4.0),
    Compartment("cabin_fwd", K.CABIN, "Forward crew cabin", 8.0, 12.0),
    Compartment("cabin_aft", K.CABIN, "Aft crew cabin", 32.0, 12.0),
    Compartment("corridor_fwd", K.CORRIDOR, "Forward corridor", 20.0, 12.0),
    Compartment("galley", K.GALLEY, "Galley", 8.0, 22.0),
    Compartment("corridor_mid", K.CORRIDOR, "Midship corridor", 20.0, 22.0),
    Compartment("crew_mess", K.CABIN, "Crew mess", 32.0, 22.0),
    Compartment("corridor_aft", K.CORRIDOR, "Aft corridor", 20.0, 32.0),
    Compartment("engine_room", K.ENGINE_ROOM, "Engine room", 32.0, 34.0),
    Compartment("muster_deck", K.MUSTER_AREA, "Muster deck", 20.0, 42.0),
]

PASSAGES = [
    Passage("bridge", "corridor_fwd", 6.0, True),
    Passage("cabin_fwd", "corridor_fwd", 5.0, True),
    Passage("cabin_aft", "corridor_fwd", 5.0, True),
    Passage("corridor_fwd", "corridor_mid", 8.0, True),
    Passage("galley", "corridor_mid", 5.0, True),
    Passage("crew_mess", "corridor_mid", 5.0, True),
    Passage("corridor_mid", "corridor_aft", 8.0, True),
    Passage("engine_room", "corridor_aft", 7.0, True),
    Passage("corridor_aft", "muster_deck", 6.0, True),
    Passage("engine_room", "crew_mess", 16.0, True),
    # unsigned shortcut; not part of any shortest escape route
    Passage("bridge", "cabin_fwd", 9.0, False),
]

EQUIPMENT = [
    Equipment("ext_galley", E.EXTINGUISHER, "galley"),
    Equipment("ext_engine", E.EXTINGUISHER, "engine_room"),
    Equipment("ext_corridor_mid", E.EXTINGUISHER, "corridor_mid"),
    Equipment("alarm_fwd", E.ALARM_CALL_POINT, "corridor_fwd"),
    Equipment("alarm_aft", E.ALARM_CALL_POINT, "corridor_aft"),
    Equipment("phone_bridge", E.EMERGENCY_PHONE, "bridge"),
    Equipment("phone_mid", E.EMERGENCY_PHONE, "corridor_mid"),
]


def layout() -> ShipLayout:
    return ShipLayout(compartments=list(COMPARTMENTS), passages=list(PASSAGES), equipment=list(EQUIPMENT))


LEVELS = [
    Scenario(
        id="L1",
        title="Small galley fire",
        layout=layout(),
        fire=FireSpec("galley", 20.0, 0.0, True, 45.0, 2),
        guidance_enabled=True,
        trainee_start="bridge",
        time_limit_s=None,
    ),
    Scenario(
        id="L2",
        title="Uncontrollable galley fire",
        layout=layout(),
        fire=FireSpec("galley", 60.0, 0.5, False, 60.0, 2),
        guidance_enabled=True,
        trainee_start="bridge",
        time_limit_s=None,
    ),
    Scenario(
        id="L3",
        title="Engine room fire",
        layout=layout(),
        fire=FireSpec("engine_room", 35.0, 0.0, True, 17.0, 2),
        guidance_enabled=False,
        trainee_start="bridge",
        time_limit_s=None,
    ),
    Scenario(
        id="L4",
        title="Runaway engine room fire",
        layout=layout(),
        fire=FireSpec("engine_room", 50.0, 2.0, False, 60.0, 2),
        guidance_enabled=False,
        trainee_start="bridge",
        time_limit_s=None,
    ),
]


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "src" / "firedrill" / "data" / "levels"
    out_dir.mkdir(parents=True, exist_ok=True)
    for scenario in LEVELS:
        report = validate_scenario(scenario)
        if not report.ok:
            raise SystemExit(f"{scenario.id} fails validation:\n{report.to_jsonl()}")
        path = out_dir / f"{scenario.id}.json"
        path.write_bytes(serialize_scenario(scenario))
        print(f"wrote {path} (ok={report.ok}, findings={len(report.findings)})")


if __name__ == "__main__":
    main()
