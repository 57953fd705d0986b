// Minimal level + snapshot factories shared by the test files.

import type { LevelDescriptor, ServerMessage, Snapshot } from "../src/protocol.js";

export function level(overrides: Partial<LevelDescriptor> = {}): LevelDescriptor {
  return {
    id: "L1",
    title: "Small galley fire",
    guidance: true,
    trainee_start: "bridge",
    time_limit_s: null,
    layout: {
      compartments: [
        { id: "bridge", kind: "bridge", name: "Bridge", x: 0, y: 0 },
        { id: "corridor", kind: "corridor", name: "Corridor", x: 10, y: 0 },
        { id: "galley", kind: "galley", name: "Galley", x: 20, y: 0 },
        { id: "muster", kind: "muster_area", name: "Muster", x: 10, y: 10 },
      ],
      passages: [
        { from: "bridge", to: "corridor", length_m: 6, signage: true },
        { from: "corridor", to: "galley", length_m: 5, signage: true },
        { from: "corridor", to: "muster", length_m: 6, signage: true },
      ],
      equipment: [
        { id: "phone_bridge", kind: "emergency_phone", compartment: "bridge" },
        { id: "alarm_corridor", kind: "alarm_call_point", compartment: "corridor" },
        { id: "ext_galley", kind: "extinguisher", compartment: "galley" },
      ],
    },
    ...overrides,
  };
}

export function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  const base: Snapshot = {
    scenario_id: "L1",
    phase: "patrol",
    time_s: 0,
    trainee: {
      compartment: "bridge",
      in_transit: null,
      idle: true,
      carrying_extinguisher: null,
      applying_agent: false,
    },
    fire: { status: "burning", intensity: 20, compartment: null },
    cues: [],
    checklist: {
      discovered: false,
      reported: false,
      alarm_raised: false,
      assessed: false,
      assessment_correct: false,
      suppression_done_or_correctly_skipped: false,
      mustered: false,
    },
    error_count: 0,
    guidance: null,
  };
  return { ...base, ...overrides, trainee: { ...base.trainee, ...(overrides.trainee ?? {}) } };
}

export function snapshotMessage(payload: Snapshot, tick = 0): ServerMessage {
  return { kind: "state_snapshot", tick, payload };
}

export function helloMessage(levels: LevelDescriptor[]): ServerMessage {
  return { kind: "hello", tick: 0, payload: { version: 1, engine_version: "1.0.0", levels } };
}
