"""Scenario files: strict parsing, SOLAS-derived validation, built-in levels.

A scenario is one UTF-8 JSON document with exactly the top-level sections
id / title / layout / fire / drill. Parsing is strict: unknown fields are
rejected so schema drift cannot pass silently. Validation never raises; it
returns findings, each carrying the regulation citation it derives from.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass
from importlib import resources

from .errors import DanglingReference, ParseError, SchemaError
from .fire import FireSpec
from .layout import (
    Compartment,
    CompartmentKind,
    Equipment,
    EquipmentKind,
    Passage,
    ShipLayout,
    equipment_in,
    graph_distance,
    shortest_escape_route,
)

ALARM_AUDIBLE_HOPS = 3

BUILTIN_LEVEL_IDS = ("L1", "L2", "L3", "L4")

# Regulation identifiers attached to findings; these reproduce the convention
# text's own citation strings and do not quote the regulations themselves.
CITATIONS = {
    "V1": "Regulation II-2/7 and III 6.4.2",
    "V2": "Regulation II-2/12",
    "V3": "Regulation II/2.2.1.7, 5, 7.5.1, 15.2.1.1, 15.2.3, 16.2, 18.8, and III 35",
    "V4": "Regulation II/13.3.2.5",
    "V5": "Regulation II-2/15.2.2 and III/19.3",
}


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    layout: ShipLayout
    fire: FireSpec
    guidance_enabled: bool
    trainee_start: str
    time_limit_s: float | None


@dataclass(frozen=True)
class Finding:
    rule: str
    severity: str  # "error" | "warning"
    message: str
    citation: str
    subject: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    findings: list[Finding]

    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    def to_jsonl(self) -> str:
        lines = []
        for f in self.findings:
            lines.append(
                json.dumps(
                    {
                        "rule": f.rule,
                        "severity": f.severity,
                        "message": f.message,
                        "citation": f.citation,
                        "subject": f.subject,
                    },
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Parsing


def _require_keys(obj: dict, expected: set[str], where: str) -> None:
    for key in sorted(expected - obj.keys()):
        raise SchemaError(f"{where}.{key}" if where else key, "missing required field")
    for key in sorted(obj.keys() - expected):
        raise SchemaError(f"{where}.{key}" if where else key, "unrecognized field")


def _typed(obj: dict, key: str, types, where: str):
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool) and bool not in _as_tuple(types):
        raise SchemaError(f"{where}.{key}", f"expected {_type_name(types)}")
    return value


def _as_tuple(types) -> tuple:
    return types if isinstance(types, tuple) else (types,)


def _type_name(types) -> str:
    return " or ".join(t.__name__ for t in _as_tuple(types))


def _number(obj: dict, key: str, where: str, minimum=None, strict_min=False) -> float:
    value = _typed(obj, key, (int, float), where)
    value = float(value)
    if minimum is not None:
        if strict_min and value <= minimum:
            raise SchemaError(f"{where}.{key}", f"must be > {minimum}")
        if not strict_min and value < minimum:
            raise SchemaError(f"{where}.{key}", f"must be >= {minimum}")
    return value


def parse_scenario(data: bytes | str) -> Scenario:
    """Parse one scenario document, rejecting anything off-schema."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if not data.strip():
        raise SchemaError("<document>", "empty scenario file")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("<document>", "top level must be a JSON object")

    _require_keys(doc, {"id", "title", "layout", "fire", "drill"}, "")
    scenario_id = _typed(doc, "id", str, "")
    title = _typed(doc, "title", str, "")

    layout_doc = _typed(doc, "layout", dict, "")
    _require_keys(layout_doc, {"compartments", "passages", "equipment"}, "layout")

    compartments: list[Compartment] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(_typed(layout_doc, "compartments", list, "layout")):
        where = f"layout.compartments[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(where, "expected object")
        _require_keys(entry, {"id", "kind", "name", "x", "y"}, where)
        cid = _typed(entry, "id", str, where)
        if cid in seen_ids:
            raise SchemaError(f"{where}.id", f"duplicate compartment id {cid!r}")
        seen_ids.add(cid)
        kind_raw = _typed(entry, "kind", str, where)
        try:
            kind = CompartmentKind(kind_raw)
        except ValueError:
            raise SchemaError(f"{where}.kind", f"unknown compartment kind {kind_raw!r}") from None
        compartments.append(
            Compartment(
                id=cid,
                kind=kind,
                display_name=_typed(entry, "name", str, where),
                x=_number(entry, "x", where),
                y=_number(entry, "y", where),
            )
        )

    passages: list[Passage] = []
    for i, entry in enumerate(_typed(layout_doc, "passages", list, "layout")):
        where = f"layout.passages[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(where, "expected object")
        _require_keys(entry, {"from", "to", "length_m", "signage"}, where)
        for end_key in ("from", "to"):
            ref = _typed(entry, end_key, str, where)
            if ref not in seen_ids:
                raise DanglingReference(f"{where}.{end_key}", ref)
        passages.append(
            Passage(
                from_id=entry["from"],
                to_id=entry["to"],
                length_m=_number(entry, "length_m", where, minimum=0.0, strict_min=True),
                has_escape_signage=_typed(entry, "signage", bool, where),
            )
        )

    equipment: list[Equipment] = []
    seen_equipment: set[str] = set()
    for i, entry in enumerate(_typed(layout_doc, "equipment", list, "layout")):
        where = f"layout.equipment[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(where, "expected object")
        _require_keys(entry, {"id", "kind", "compartment"}, where)
        eid = _typed(entry, "id", str, where)
        if eid in seen_equipment:
            raise SchemaError(f"{where}.id", f"duplicate equipment id {eid!r}")
        seen_equipment.add(eid)
        kind_raw = _typed(entry, "kind", str, where)
        try:
            ekind = EquipmentKind(kind_raw)
        except ValueError:
            raise SchemaError(f"{where}.kind", f"unknown equipment kind {kind_raw!r}") from None
        ref = _typed(entry, "compartment", str, where)
        if ref not in seen_ids:
            raise DanglingReference(f"{where}.compartment", ref)
        equipment.append(Equipment(id=eid, kind=ekind, compartment=ref))

    fire_doc = _typed(doc, "fire", dict, "")
    _require_keys(
        fire_doc,
        {"compartment", "initial_intensity", "growth_rate", "extinguishable", "extinguish_work_s", "audible_hops"},
        "fire",
    )
    fire_ref = _typed(fire_doc, "compartment", str, "fire")
    if fire_ref not in seen_ids:
        raise DanglingReference("fire.compartment", fire_ref)
    audible = _typed(fire_doc, "audible_hops", int, "fire")
    if audible < 1:
        raise SchemaError("fire.audible_hops", "must be >= 1")
    fire = FireSpec(
        compartment=fire_ref,
        initial_intensity=_number(fire_doc, "initial_intensity", "fire", minimum=0.0),
        growth_rate=_number(fire_doc, "growth_rate", "fire", minimum=0.0),
        extinguishable=_typed(fire_doc, "extinguishable", bool, "fire"),
        extinguish_work_s=_number(fire_doc, "extinguish_work_s", "fire", minimum=0.0, strict_min=True),
        audible_hops=audible,
    )

    drill_doc = _typed(doc, "drill", dict, "")
    _require_keys(drill_doc, {"guidance", "trainee_start", "time_limit_s"}, "drill")
    start = _typed(drill_doc, "trainee_start", str, "drill")
    if start not in seen_ids:
        raise DanglingReference("drill.trainee_start", start)
    if start == fire_ref:
        raise SchemaError("drill.trainee_start", "trainee must not start in the fire compartment")
    limit = drill_doc["time_limit_s"]
    if limit is not None:
        limit = _number(drill_doc, "time_limit_s", "drill", minimum=0.0, strict_min=True)

    return Scenario(
        id=scenario_id,
        title=title,
        layout=ShipLayout(compartments=compartments, passages=passages, equipment=equipment),
        fire=fire,
        guidance_enabled=_typed(drill_doc, "guidance", bool, "drill"),
        trainee_start=start,
        time_limit_s=limit,
    )


def serialize_scenario(scenario: Scenario) -> bytes:
    """Canonical file form: fixed key order, two-space indent."""
    doc = {
        "id": scenario.id,
        "title": scenario.title,
        "layout": {
            "compartments": [
                {"id": c.id, "kind": c.kind.value, "name": c.display_name, "x": c.x, "y": c.y}
                for c in scenario.layout.compartments
            ],
            "passages": [
                {"from": p.from_id, "to": p.to_id, "length_m": p.length_m, "signage": p.has_escape_signage}
                for p in scenario.layout.passages
            ],
            "equipment": [
                {"id": e.id, "kind": e.kind.value, "compartment": e.compartment}
                for e in scenario.layout.equipment
            ],
        },
        "fire": {
            "compartment": scenario.fire.compartment,
            "initial_intensity": scenario.fire.initial_intensity,
            "growth_rate": scenario.fire.growth_rate,
            "extinguishable": scenario.fire.extinguishable,
            "extinguish_work_s": scenario.fire.extinguish_work_s,
            "audible_hops": scenario.fire.audible_hops,
        },
        "drill": {
            "guidance": scenario.guidance_enabled,
            "trainee_start": scenario.trainee_start,
            "time_limit_s": scenario.time_limit_s,
        },
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Validation


def _blind_escape_distances(layout: ShipLayout) -> dict[str, float]:
    """Shortest distance from every compartment to its nearest muster area,
    ignoring signage (multi-source Dijkstra)."""
    dist: dict[str, float] = {}
    heap: list[tuple[float, str]] = []
    for m in layout.muster_areas():
        dist[m] = 0.0
        heapq.heappush(heap, (0.0, m))
    while heap:
        d, current = heapq.heappop(heap)
        if d > dist.get(current, float("inf")):
            continue
        for p in layout.passages_at(current):
            nxt = p.other_end(current)
            nd = d + p.length_m
            if nd < dist.get(nxt, float("inf")):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """Run every compliance rule; returns findings, never raises."""
    layout = scenario.layout
    findings: list[Finding] = []

    def finding(rule: str, message: str, subject: str, severity: str = "error") -> None:
        findings.append(Finding(rule=rule, severity=severity, message=message, citation=CITATIONS.get(rule, ""), subject=subject))

    # V1: an alarm call point exists and is within earshot of every compartment
    alarm_hosts = layout.compartments_with(EquipmentKind.ALARM_CALL_POINT)
    if not alarm_hosts:
        finding("V1", "no alarm call point anywhere on the ship", "layout")
    else:
        for c in layout.compartments:
            hops = min(graph_distance(layout, c.id, host) for host in alarm_hosts)
            if hops > ALARM_AUDIBLE_HOPS:
                finding("V1", f"compartment is {hops} hops from the nearest alarm call point (limit {ALARM_AUDIBLE_HOPS})", c.id)

    # V2: signed escape route from everywhere
    for c in layout.compartments:
        try:
            shortest_escape_route(layout, c.id)
        except Exception:
            finding("V2", "no signed escape route to any muster area", c.id)

    # V3: extinguisher in every high-risk compartment
    for c in layout.compartments:
        if c.kind in (CompartmentKind.GALLEY, CompartmentKind.ENGINE_ROOM):
            if not equipment_in(layout, c.id, EquipmentKind.EXTINGUISHER):
                finding("V3", f"{c.kind.value} has no fire extinguisher", c.id)

    # V4: any passage lying on a geometrically shortest escape route must be
    # signed, so the signage marks the routes people would actually take
    dist = _blind_escape_distances(layout)
    flagged: set[tuple[str, str]] = set()
    for p in layout.passages:
        da, db = dist.get(p.from_id), dist.get(p.to_id)
        if da is None or db is None:
            continue  # unreachable from muster; V2 reports it
        on_shortest = abs(da - (db + p.length_m)) < 1e-9 or abs(db - (da + p.length_m)) < 1e-9
        key = (p.from_id, p.to_id)
        if on_shortest and not p.has_escape_signage and key not in flagged:
            flagged.add(key)
            finding("V4", "passage lies on a shortest escape route but carries no escape signage", f"{p.from_id}->{p.to_id}")

    # V5: the trainee can reach an emergency phone to report the fire
    phone_hosts = set(layout.compartments_with(EquipmentKind.EMERGENCY_PHONE))
    if not phone_hosts:
        finding("V5", "no emergency phone anywhere on the ship", scenario.trainee_start)
    else:
        reachable = {scenario.trainee_start}
        queue = deque([scenario.trainee_start])
        while queue:
            current = queue.popleft()
            for p in layout.passages_at(current):
                nxt = p.other_end(current)
                if nxt not in reachable:
                    reachable.add(nxt)
                    queue.append(nxt)
        if not (reachable & phone_hosts):
            finding("V5", "no emergency phone reachable from the trainee start position", scenario.trainee_start)

    # style warnings
    for c in layout.compartments:
        if not c.display_name.strip():
            finding("W1", "compartment has no display name", c.id, severity="warning")

    ok = not any(f.severity == "error" for f in findings)
    return ValidationReport(ok=ok, findings=findings)


# ---------------------------------------------------------------------------
# Built-in levels


def builtin_level_bytes(level_id: str) -> bytes:
    if level_id not in BUILTIN_LEVEL_IDS:
        raise KeyError(f"unknown built-in level {level_id!r}")
    return resources.files("firedrill.data").joinpath(f"levels/{level_id}.json").read_bytes()


def builtin_level(level_id: str) -> Scenario:
    return parse_scenario(builtin_level_bytes(level_id))


def builtin_levels() -> list[Scenario]:
    """The four shipped levels, in play order."""
    return [builtin_level(lid) for lid in BUILTIN_LEVEL_IDS]
