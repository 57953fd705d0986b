// Wire protocol types and codecs. Mirrors docs/protocol.md on the server
// side: every frame is one newline-terminated JSON document.

export interface CompartmentInfo {
  id: string;
  kind: string;
  name: string;
  x: number;
  y: number;
}

export interface PassageInfo {
  from: string;
  to: string;
  length_m: number;
  signage: boolean;
}

export interface EquipmentInfo {
  id: string;
  kind: string;
  compartment: string;
}

export interface LayoutInfo {
  compartments: CompartmentInfo[];
  passages: PassageInfo[];
  equipment: EquipmentInfo[];
}

export interface LevelDescriptor {
  id: string;
  title: string;
  guidance: boolean;
  trainee_start: string;
  time_limit_s: number | null;
  layout: LayoutInfo;
}

export interface TransitInfo {
  from: string;
  to: string;
  progress: number;
}

export interface Snapshot {
  scenario_id: string;
  phase: string;
  time_s: number;
  trainee: {
    compartment: string;
    in_transit: TransitInfo | null;
    idle: boolean;
    carrying_extinguisher: string | null;
    applying_agent: boolean;
  };
  fire: {
    status: string;
    intensity: number;
    compartment: string | null;
  };
  cues: string[];
  checklist: Record<string, boolean>;
  error_count: number;
  guidance: string | null;
}

export interface ScorePayload {
  scenario_id: string;
  total_time_s: number;
  per_phase_time_s: Record<string, number>;
  checklist: Record<string, boolean>;
  errors: { kind: string; tick: number; detail: string }[];
  completed: boolean;
  state_hash: string;
  aborted: boolean;
  log_path: string | null;
}

export type ServerMessage =
  | { kind: "hello"; tick: number; payload: { version: number; engine_version: string; levels: LevelDescriptor[] } }
  | { kind: "state_snapshot"; tick: number; payload: Snapshot }
  | { kind: "cue"; tick: number; payload: { cues: string[] } }
  | { kind: "guidance"; tick: number; payload: { text: string } }
  | { kind: "phase_changed"; tick: number; payload: { from: string; to: string; cause: string; at_tick: number } }
  | { kind: "error_logged"; tick: number; payload: { kind: string; detail: string } }
  | { kind: "fire_update"; tick: number; payload: { status: string; intensity: number } }
  | { kind: "score"; tick: number; payload: ScorePayload }
  | { kind: "protocol_error"; tick: number; payload: { message: string } };

export interface ActionCommand {
  kind: string;
  tick?: number;
  target?: string;
  severity?: string;
}

export type ClientMessage =
  | { kind: "start_level"; level: string; seed?: number }
  | { kind: "action"; command: ActionCommand }
  | { kind: "pause" }
  | { kind: "resume" }
  | { kind: "abort" };

const SERVER_KINDS = new Set([
  "hello",
  "state_snapshot",
  "cue",
  "guidance",
  "phase_changed",
  "error_logged",
  "fire_update",
  "score",
  "protocol_error",
]);

/** Parse one frame; returns null for anything that is not a server message. */
export function parseServerMessage(text: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null) return null;
  const msg = obj as { kind?: unknown; payload?: unknown };
  if (typeof msg.kind !== "string" || !SERVER_KINDS.has(msg.kind)) return null;
  if (typeof msg.payload !== "object" || msg.payload === null) return null;
  return obj as ServerMessage;
}

export function encodeClientMessage(msg: ClientMessage): string {
  return JSON.stringify(msg) + "\n";
}
