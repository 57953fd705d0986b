// Bootstraps the trainer: menu, live game view, score screen. All drill
// state comes from the server; this file only routes gestures out and
// snapshots into the DOM/canvas.

import { Gesture, availableInteractions, messageForGesture } from "./actions.js";
import { DrillAudio } from "./audio.js";
import { compartmentAt, fitLayout } from "./geometry.js";
import { connect } from "./net.js";
import type { ScorePayload, ServerMessage } from "./protocol.js";
import { drawScene } from "./render.js";
import {
  AppState,
  applyServerMessage,
  describeError,
  initialState,
  levelById,
  levelStarted,
  nextLevelId,
  setConnected,
  showMenu,
} from "./state.js";

let state: AppState = initialState();
const audio = new DrillAudio();
let showTicks = false;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const canvas = $("plan") as unknown as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;

const wsUrl = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
const conn = connect(wsUrl, onServerMessage, (up) => {
  state = setConnected(state, up);
  renderDom();
});

function dispatch(gesture: Gesture): void {
  const msg = messageForGesture(gesture, state);
  if (!msg) return;
  if (!conn.send(msg)) return; // disconnected; banner already shown
  if (msg.kind === "start_level") {
    state = levelStarted(state, msg.level);
    renderDom();
  }
}

function onServerMessage(msg: ServerMessage): void {
  state = applyServerMessage(state, msg);
  if (msg.kind === "state_snapshot") {
    const snap = msg.payload;
    audio.update(
      snap.cues.includes("auditory"),
      snap.checklist.alarm_raised && snap.phase !== "complete",
      snap.fire.status === "burning",
    );
  }
  if (msg.kind === "score") {
    audio.update(false, false, false);
  }
  renderDom();
}

// ---------------------------------------------------------------------------
// Menu

const SECTIONS = ["start", "howto", "settings", "about"] as const;

function showSection(name: (typeof SECTIONS)[number]): void {
  for (const section of SECTIONS) {
    $(`menu-${section}`).classList.toggle("hidden", section !== name);
    $(`tab-${section}`).classList.toggle("active", section === name);
  }
}

for (const section of SECTIONS) {
  $(`tab-${section}`).addEventListener("click", () => showSection(section));
}

function renderLevelCards(): void {
  const host = $("level-cards");
  host.innerHTML = "";
  for (const level of state.levels) {
    const card = document.createElement("button");
    card.className = "level-card";
    card.innerHTML = `<strong>${level.id}</strong> ${level.title}<br>
      <small>${level.guidance ? "guidance on" : "no guidance"}</small>`;
    card.addEventListener("click", () => dispatch({ type: "select_level", level: level.id }));
    card.disabled = !state.connected;
    host.appendChild(card);
  }
}

$("setting-sound").addEventListener("change", (e) => {
  audio.setEnabled((e.target as HTMLInputElement).checked);
});
$("setting-ticks").addEventListener("change", (e) => {
  showTicks = (e.target as HTMLInputElement).checked;
  renderDom();
});

// ---------------------------------------------------------------------------
// Game view

canvas.addEventListener("click", (event) => {
  const level = levelById(state, state.levelId);
  if (!level || !state.snapshot || state.screen !== "game") return;
  const rect = canvas.getBoundingClientRect();
  const px = ((event.clientX - rect.left) / rect.width) * canvas.width;
  const py = ((event.clientY - rect.top) / rect.height) * canvas.height;
  const view = fitLayout(level.layout, canvas.width, canvas.height);
  const target = compartmentAt(level.layout, view, px, py);
  if (target) dispatch({ type: "compartment_click", compartment: target });
});

const BUTTONS: [string, Gesture][] = [
  ["btn-phone", { type: "use_phone" }],
  ["btn-alarm", { type: "pull_alarm" }],
  ["btn-pickup", { type: "pick_up" }],
  ["btn-agent", { type: "toggle_agent" }],
  ["btn-evacuate", { type: "evacuate" }],
  ["btn-controllable", { type: "assess", severity: "controllable" }],
  ["btn-imminent", { type: "assess", severity: "imminent_threat" }],
  ["btn-abort", { type: "abort" }],
];
for (const [id, gesture] of BUTTONS) {
  $(id).addEventListener("click", () => dispatch(gesture));
}

function renderGame(): void {
  const snap = state.snapshot;
  const level = levelById(state, state.levelId);
  $("game-title").textContent = level ? `${level.id}: ${level.title}` : state.levelId ?? "";
  if (!snap) return;
  $("phase-chip").textContent = snap.phase.replace(/_/g, " ");
  $("timer").textContent =
    `${snap.time_s.toFixed(1)} s` + (showTicks ? ` (tick ${Math.round(snap.time_s * 10)})` : "");
  const guidance = $("guidance");
  guidance.textContent = snap.guidance ?? "";
  guidance.classList.toggle("hidden", snap.guidance === null);

  const can = availableInteractions(state);
  ($("btn-phone") as HTMLButtonElement).classList.toggle("hidden", !can.usePhone);
  ($("btn-alarm") as HTMLButtonElement).classList.toggle("hidden", !can.pullAlarm);
  ($("btn-pickup") as HTMLButtonElement).classList.toggle("hidden", can.pickUp === null);
  const agent = $("btn-agent") as HTMLButtonElement;
  agent.classList.toggle("hidden", !can.applyAgent && !can.stopAgent);
  agent.textContent = can.stopAgent ? "Stop agent" : "Apply agent";
  $("assess-dialog").classList.toggle("hidden", !can.assess);
  ($("btn-evacuate") as HTMLButtonElement).disabled = !can.evacuate;

  const toasts = $("toasts");
  toasts.innerHTML = "";
  for (const toast of state.toasts) {
    const el = document.createElement("div");
    el.className = `toast ${toast.tone}`;
    el.textContent = toast.text;
    toasts.appendChild(el);
  }
}

// ---------------------------------------------------------------------------
// Score screen

const CHECKLIST_LABELS: Record<string, string> = {
  discovered: "Discovered the fire",
  reported: "Reported to the ship master",
  alarm_raised: "Activated the fire alarm",
  assessed: "Assessed the severity",
  assessment_correct: "Assessment was correct",
  suppression_done_or_correctly_skipped: "Suppression handled correctly",
  mustered: "Assembled at the muster area",
};

function renderScore(score: ScorePayload): void {
  $("score-title").textContent = score.aborted
    ? `${score.scenario_id} aborted`
    : score.completed
      ? `${score.scenario_id} complete`
      : `${score.scenario_id} not completed`;
  $("score-time").textContent = `${score.total_time_s.toFixed(1)} s total`;

  const phases = $("score-phases");
  phases.innerHTML = "";
  for (const [phase, seconds] of Object.entries(score.per_phase_time_s)) {
    if (seconds === 0) continue;
    const li = document.createElement("li");
    li.textContent = `${phase.replace(/_/g, " ")}: ${seconds.toFixed(1)} s`;
    phases.appendChild(li);
  }

  const checklist = $("score-checklist");
  checklist.innerHTML = "";
  for (const [key, label] of Object.entries(CHECKLIST_LABELS)) {
    const li = document.createElement("li");
    li.textContent = `${score.checklist[key] ? "☑" : "☐"} ${label}`;
    checklist.appendChild(li);
  }

  const errors = $("score-errors");
  errors.innerHTML = "";
  if (score.errors.length === 0) {
    const li = document.createElement("li");
    li.textContent = "No decision errors";
    errors.appendChild(li);
  }
  for (const err of score.errors) {
    const li = document.createElement("li");
    li.className = "error";
    li.textContent = describeError(err.kind);
    errors.appendChild(li);
  }

  const next = nextLevelId(state);
  ($("btn-next") as HTMLButtonElement).classList.toggle("hidden", next === null || !score.completed);
}

$("btn-retry").addEventListener("click", () => {
  if (state.levelId) dispatch({ type: "select_level", level: state.levelId });
});
$("btn-next").addEventListener("click", () => {
  const next = nextLevelId(state);
  if (next) dispatch({ type: "select_level", level: next });
});
$("btn-menu").addEventListener("click", () => {
  state = showMenu(state);
  renderDom();
});

// ---------------------------------------------------------------------------
// Top-level rendering

function renderDom(): void {
  $("banner").classList.toggle("hidden", state.connected);
  $("menu").classList.toggle("hidden", state.screen !== "menu");
  $("game").classList.toggle("hidden", state.screen !== "game");
  $("score").classList.toggle("hidden", state.screen !== "score");
  if (state.screen === "menu") renderLevelCards();
  if (state.screen === "game") renderGame();
  if (state.screen === "score" && state.score) renderScore(state.score);
}

function frame(nowMs: number): void {
  if (state.screen === "game" && state.snapshot) {
    const level = levelById(state, state.levelId);
    if (level) drawScene(ctx, level, state.snapshot, nowMs / 1000);
  }
  requestAnimationFrame(frame);
}

renderDom();
requestAnimationFrame(frame);
