import { describe, expect, it } from "vitest";

import { encodeClientMessage, parseServerMessage } from "../src/protocol.js";
import { avatarPosition, compartmentAt, fitLayout, toCanvas } from "../src/geometry.js";
import { level, snapshot } from "./fixtures.js";

describe("frame parsing", () => {
  it("accepts every documented server kind", () => {
    for (const kind of ["hello", "state_snapshot", "cue", "guidance", "phase_changed", "error_logged", "fire_update", "score", "protocol_error"]) {
      const msg = parseServerMessage(JSON.stringify({ kind, tick: 1, payload: {} }) + "\n");
      expect(msg?.kind).toBe(kind);
    }
  });

  it("rejects garbage, non-objects and unknown kinds", () => {
    expect(parseServerMessage("not json")).toBeNull();
    expect(parseServerMessage("42")).toBeNull();
    expect(parseServerMessage('{"kind":"mystery","payload":{}}')).toBeNull();
    expect(parseServerMessage('{"kind":"hello"}')).toBeNull();
  });

  it("encodes one newline-terminated JSON document per message", () => {
    const text = encodeClientMessage({ kind: "start_level", level: "L1", seed: 7 });
    expect(text.endsWith("\n")).toBe(true);
    expect(JSON.parse(text)).toEqual({ kind: "start_level", level: "L1", seed: 7 });
    expect(text.slice(0, -1).includes("\n")).toBe(false);
  });
});

describe("plan geometry", () => {
  const l = level();

  it("fits the layout inside the canvas", () => {
    const view = fitLayout(l.layout, 960, 600);
    for (const c of l.layout.compartments) {
      const [x, y] = toCanvas(view, c.x, c.y);
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(960);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(600);
    }
  });

  it("finds the clicked compartment and nothing in the gaps", () => {
    const view = fitLayout(l.layout, 960, 600);
    const [gx, gy] = toCanvas(view, 20, 0); // the galley
    expect(compartmentAt(l.layout, view, gx + 3, gy - 3)).toBe("galley");
    expect(compartmentAt(l.layout, view, 2, 2)).toBeNull();
  });

  it("interpolates the avatar along a passage", () => {
    const mid = snapshot({
      trainee: {
        compartment: "bridge",
        in_transit: { from: "bridge", to: "corridor", progress: 0.5 },
        idle: false,
        carrying_extinguisher: null,
        applying_agent: false,
      },
    });
    expect(avatarPosition(level().layout, mid)).toEqual([5, 0]);
    const standing = snapshot({ trainee: { compartment: "galley", in_transit: null, idle: true, carrying_extinguisher: null, applying_agent: false } });
    expect(avatarPosition(level().layout, standing)).toEqual([20, 0]);
  });
});
