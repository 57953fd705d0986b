// Gesture -> ClientMessage mapping. Every user gesture produces exactly one
// message (or none when the gesture is meaningless in the current state);
// nothing here mutates state, so the UI cannot get ahead of the server.

import type { ClientMessage, Snapshot } from "./protocol.js";
import type { AppState } from "./state.js";
import { levelById } from "./state.js";

export type Gesture =
  | { type: "select_level"; level: string }
  | { type: "compartment_click"; compartment: string }
  | { type: "use_phone" }
  | { type: "pull_alarm" }
  | { type: "pick_up" }
  | { type: "toggle_agent" }
  | { type: "assess"; severity: "controllable" | "imminent_threat" }
  | { type: "evacuate" }
  | { type: "abort" };

export interface Interactions {
  usePhone: boolean;
  pullAlarm: boolean;
  pickUp: string | null;
  applyAgent: boolean;
  stopAgent: boolean;
  assess: boolean;
  evacuate: boolean;
}

function equipmentHere(state: AppState, snap: Snapshot, kind: string): string | null {
  const level = levelById(state, state.levelId);
  if (!level) return null;
  const here = snap.trainee.compartment;
  const found = level.layout.equipment
    .filter((e) => e.compartment === here && e.kind === kind)
    .map((e) => e.id)
    .sort();
  return found[0] ?? null;
}

/** Which context controls the current snapshot justifies showing. */
export function availableInteractions(state: AppState): Interactions {
  const snap = state.snapshot;
  const none: Interactions = {
    usePhone: false,
    pullAlarm: false,
    pickUp: null,
    applyAgent: false,
    stopAgent: false,
    assess: false,
    evacuate: false,
  };
  if (!snap || snap.phase === "complete") return none;
  const idle = snap.trainee.idle;
  return {
    usePhone: idle && equipmentHere(state, snap, "emergency_phone") !== null,
    pullAlarm: idle && equipmentHere(state, snap, "alarm_call_point") !== null,
    pickUp:
      idle && snap.trainee.carrying_extinguisher === null
        ? equipmentHere(state, snap, "extinguisher")
        : null,
    applyAgent: idle && snap.trainee.carrying_extinguisher !== null && !snap.trainee.applying_agent,
    stopAgent: snap.trainee.applying_agent,
    assess: snap.phase === "alarm_raised",
    evacuate: true,
  };
}

export function messageForGesture(gesture: Gesture, state: AppState): ClientMessage | null {
  const snap = state.snapshot;
  const tick = snap ? Math.round(snap.time_s * 10) : 0;
  switch (gesture.type) {
    case "select_level":
      return { kind: "start_level", level: gesture.level, seed: Date.now() % 1_000_000 };
    case "compartment_click":
      if (!snap) return null;
      return { kind: "action", command: { kind: "move_to", target: gesture.compartment, tick } };
    case "use_phone":
      return snap ? { kind: "action", command: { kind: "use_phone", tick } } : null;
    case "pull_alarm":
      return snap ? { kind: "action", command: { kind: "pull_alarm", tick } } : null;
    case "pick_up": {
      if (!snap) return null;
      const target = availableInteractions(state).pickUp;
      return target ? { kind: "action", command: { kind: "pick_up", target, tick } } : null;
    }
    case "toggle_agent":
      if (!snap) return null;
      return snap.trainee.applying_agent
        ? { kind: "action", command: { kind: "stop_apply", tick } }
        : { kind: "action", command: { kind: "start_apply", tick } };
    case "assess":
      return snap ? { kind: "action", command: { kind: "assess", severity: gesture.severity, tick } } : null;
    case "evacuate":
      return snap ? { kind: "action", command: { kind: "evacuate", tick } } : null;
    case "abort":
      return { kind: "abort" };
  }
}
