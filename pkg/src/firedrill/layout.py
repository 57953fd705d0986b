"""Ship layout: compartment graph, placed equipment, reachability queries.

The ship is a flat graph of compartments joined by bidirectional passages.
2D coordinates exist only so a client can draw the plan; every query here is
topological (hops) or metric over passage lengths. Layouts are immutable
after construction and safe to share across sessions.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .errors import NoEscapeRoute, UnknownCompartment


class CompartmentKind(str, Enum):
    GALLEY = "galley"
    ENGINE_ROOM = "engine_room"
    CORRIDOR = "corridor"
    CABIN = "cabin"
    BRIDGE = "bridge"
    DECK = "deck"
    MUSTER_AREA = "muster_area"


class EquipmentKind(str, Enum):
    EXTINGUISHER = "extinguisher"
    ALARM_CALL_POINT = "alarm_call_point"
    EMERGENCY_PHONE = "emergency_phone"


@dataclass(frozen=True)
class Compartment:
    id: str
    kind: CompartmentKind
    display_name: str
    x: float
    y: float


@dataclass(frozen=True)
class Passage:
    from_id: str
    to_id: str
    length_m: float
    has_escape_signage: bool

    def other_end(self, compartment_id: str) -> str:
        return self.to_id if compartment_id == self.from_id else self.from_id


@dataclass(frozen=True)
class Equipment:
    id: str
    kind: EquipmentKind
    compartment: str


@dataclass
class ShipLayout:
    compartments: list[Compartment]
    passages: list[Passage]
    equipment: list[Equipment]

    # derived lookups, built once
    _by_id: dict[str, Compartment] = field(init=False, repr=False, compare=False)
    _adjacency: dict[str, list[Passage]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_id = {c.id: c for c in self.compartments}
        adjacency: dict[str, list[Passage]] = {c.id: [] for c in self.compartments}
        for p in self.passages:
            adjacency[p.from_id].append(p)
            adjacency[p.to_id].append(p)
        # deterministic neighbour order regardless of file order
        for cid in adjacency:
            adjacency[cid].sort(key=lambda p, cid=cid: (p.other_end(cid), p.length_m))
        self._adjacency = adjacency

    def compartment(self, compartment_id: str) -> Compartment:
        try:
            return self._by_id[compartment_id]
        except KeyError:
            raise UnknownCompartment(compartment_id) from None

    def has_compartment(self, compartment_id: str) -> bool:
        return compartment_id in self._by_id

    def passages_at(self, compartment_id: str) -> list[Passage]:
        self.compartment(compartment_id)
        return self._adjacency[compartment_id]

    def passage_between(self, a: str, b: str) -> Passage | None:
        for p in self.passages_at(a):
            if p.other_end(a) == b:
                return p
        return None

    def muster_areas(self) -> list[str]:
        return [c.id for c in self.compartments if c.kind == CompartmentKind.MUSTER_AREA]

    def compartments_with(self, kind: EquipmentKind) -> list[str]:
        return sorted({e.compartment for e in self.equipment if e.kind == kind})


def graph_distance(layout: ShipLayout, a: str, b: str) -> int:
    """Minimum number of passages between two compartments (0 iff a == b)."""
    layout.compartment(a)
    layout.compartment(b)
    if a == b:
        return 0
    seen = {a}
    queue = deque([(a, 0)])
    while queue:
        current, hops = queue.popleft()
        for p in layout.passages_at(current):
            nxt = p.other_end(current)
            if nxt == b:
                return hops + 1
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, hops + 1))
    raise ValueError(f"no path between {a!r} and {b!r} (layout is not connected)")


def shortest_path(
    layout: ShipLayout,
    from_id: str,
    goals: set[str],
    signed_only: bool = False,
) -> list[str] | None:
    """Minimum-length path from from_id to the nearest of `goals`.

    Ties broken by the lexicographically smallest compartment-id sequence so
    that identical layouts always produce identical routes. Returns None when
    no (signed) path reaches any goal.
    """
    layout.compartment(from_id)
    for g in goals:
        layout.compartment(g)
    if from_id in goals:
        return [from_id]
    # heap entries: (distance, path-so-far); path tuples give the lexicographic
    # tie-break for equal distances.
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (from_id,))]
    best: dict[str, tuple[float, tuple[str, ...]]] = {}
    while heap:
        dist, path = heapq.heappop(heap)
        current = path[-1]
        settled = best.get(current)
        if settled is not None and (settled[0], settled[1]) < (dist, path):
            continue
        if current in goals:
            return list(path)
        for p in layout.passages_at(current):
            if signed_only and not p.has_escape_signage:
                continue
            nxt = p.other_end(current)
            if nxt in path:
                continue
            cand = (dist + p.length_m, path + (nxt,))
            known = best.get(nxt)
            if known is None or cand < known:
                best[nxt] = cand
                heapq.heappush(heap, cand)
    return None


def shortest_escape_route(layout: ShipLayout, from_id: str) -> list[str]:
    """Cheapest signed route from a compartment to any muster area.

    Only passages with escape signage may be used; total length_m is
    minimised, with lexicographic tie-breaking on the id sequence.
    """
    musters = set(layout.muster_areas())
    if not musters:
        raise NoEscapeRoute(from_id)
    path = shortest_path(layout, from_id, musters, signed_only=True)
    if path is None:
        raise NoEscapeRoute(from_id)
    return path


def equipment_in(layout: ShipLayout, compartment_id: str, kind: EquipmentKind) -> list[str]:
    """Ids of equipment of one kind placed in a compartment, sorted by id."""
    layout.compartment(compartment_id)
    return sorted(e.id for e in layout.equipment if e.compartment == compartment_id and e.kind == kind)
