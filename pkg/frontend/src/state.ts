// Client state: a pure fold over server messages. The client never
// simulates; everything rendered in the game view comes from the most
// recent snapshot, and side streams (toasts, fire flare, score) only add
// presentation on top.

import type { LevelDescriptor, ScorePayload, ServerMessage, Snapshot } from "./protocol.js";

export type Screen = "menu" | "game" | "score";

export interface Toast {
  text: string;
  tone: "error" | "info";
}

export interface AppState {
  screen: Screen;
  connected: boolean;
  levels: LevelDescriptor[];
  engineVersion: string | null;
  levelId: string | null;
  snapshot: Snapshot | null;
  score: ScorePayload | null;
  toasts: Toast[];
  lastPhaseChange: string | null;
}

const MAX_TOASTS = 4;

export function initialState(): AppState {
  return {
    screen: "menu",
    connected: false,
    levels: [],
    engineVersion: null,
    levelId: null,
    snapshot: null,
    score: null,
    toasts: [],
    lastPhaseChange: null,
  };
}

export function setConnected(state: AppState, connected: boolean): AppState {
  return { ...state, connected };
}

/** Local navigation that involves no server round trip. */
export function showMenu(state: AppState): AppState {
  return { ...state, screen: "menu", levelId: null, snapshot: null, score: null };
}

export function levelStarted(state: AppState, levelId: string): AppState {
  return { ...state, screen: "game", levelId, snapshot: null, score: null, toasts: [] };
}

function pushToast(state: AppState, toast: Toast): AppState {
  return { ...state, toasts: [...state.toasts, toast].slice(-MAX_TOASTS) };
}

const ERROR_DESCRIPTIONS: Record<string, string> = {
  extinguish_attempt_on_imminent_fire: "You tried to fight a fire that is an imminent threat",
  premature_evacuation: "You evacuated before extinguishing a controllable fire",
  alarm_before_report: "You raised the alarm before informing the ship master",
  action_out_of_phase: "That action is not part of the current drill step",
};

export function describeError(kind: string): string {
  return ERROR_DESCRIPTIONS[kind] ?? kind.replace(/_/g, " ");
}

export function applyServerMessage(state: AppState, msg: ServerMessage): AppState {
  switch (msg.kind) {
    case "hello":
      return { ...state, levels: msg.payload.levels, engineVersion: msg.payload.engine_version };
    case "state_snapshot": {
      const next: AppState = { ...state, snapshot: msg.payload };
      if (state.screen === "game" && state.levelId === null) {
        next.levelId = msg.payload.scenario_id;
      }
      return next;
    }
    case "phase_changed":
      return { ...state, lastPhaseChange: msg.payload.to };
    case "error_logged":
      return pushToast(state, { text: describeError(msg.payload.kind), tone: "error" });
    case "protocol_error":
      return pushToast(state, { text: msg.payload.message, tone: "error" });
    case "score":
      return { ...state, screen: "score", score: msg.payload };
    case "cue":
    case "guidance":
    case "fire_update":
      // presentation streams; the snapshot already carries this state
      return state;
  }
}

export function levelById(state: AppState, id: string | null): LevelDescriptor | null {
  return state.levels.find((l) => l.id === id) ?? null;
}

export function nextLevelId(state: AppState): string | null {
  if (state.levelId === null) return null;
  const ids = state.levels.map((l) => l.id);
  const i = ids.indexOf(state.levelId);
  return i >= 0 && i + 1 < ids.length ? ids[i + 1] : null;
}
