// Canvas rendering of the ship plan: compartments, passages, equipment,
// the avatar, cue badges and the fire. Draws only what the last snapshot
// says; there is no animation state beyond a wall-clock pulse phase.

import type { LevelDescriptor, Snapshot } from "./protocol.js";
import { avatarPosition, fitLayout, toCanvas, Viewport } from "./geometry.js";

const KIND_FILL: Record<string, string> = {
  galley: "#3c2f22",
  engine_room: "#33272e",
  corridor: "#23272e",
  cabin: "#242e26",
  bridge: "#1f2b38",
  deck: "#2a2d31",
  muster_area: "#1f3a2a",
};

const EQUIPMENT_GLYPH: Record<string, string> = {
  extinguisher: "\u{1F9EF}",
  alarm_call_point: "\u{1F514}",
  emergency_phone: "\u{1F4DE}",
};

const BOX = 34; // half-size of a compartment box in px

export function drawScene(
  ctx: CanvasRenderingContext2D,
  level: LevelDescriptor,
  snap: Snapshot,
  pulse: number,
): Viewport {
  const { width, height } = ctx.canvas;
  const view = fitLayout(level.layout, width, height);
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#14161a";
  ctx.fillRect(0, 0, width, height);

  const byId = new Map(level.layout.compartments.map((c) => [c.id, c]));

  for (const p of level.layout.passages) {
    const a = byId.get(p.from);
    const b = byId.get(p.to);
    if (!a || !b) continue;
    const [ax, ay] = toCanvas(view, a.x, a.y);
    const [bx, by] = toCanvas(view, b.x, b.y);
    ctx.strokeStyle = p.signage ? "#3f6f4f" : "#3a3f46";
    ctx.lineWidth = p.signage ? 10 : 6;
    ctx.setLineDash(p.signage ? [] : [8, 6]);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
  }
  ctx.setLineDash([]);

  for (const c of level.layout.compartments) {
    const [x, y] = toCanvas(view, c.x, c.y);
    ctx.fillStyle = KIND_FILL[c.kind] ?? "#26292e";
    ctx.strokeStyle = c.kind === "muster_area" ? "#5fae78" : "#4a505a";
    ctx.lineWidth = 2;
    roundRect(ctx, x - BOX, y - BOX, BOX * 2, BOX * 2, 8);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#c9ced6";
    ctx.font = "11px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(c.name, x, y + BOX + 14);
    if (c.kind === "muster_area") {
      ctx.fillText("\u{26F3} muster", x, y - BOX - 6);
    }
    const glyphs = level.layout.equipment.filter((e) => e.compartment === c.id);
    glyphs.forEach((e, i) => {
      ctx.font = "14px system-ui, sans-serif";
      ctx.fillText(EQUIPMENT_GLYPH[e.kind] ?? "?", x - BOX + 12 + i * 18, y - BOX + 16);
    });
  }

  // fire, once discovered (the server hides its location before that)
  if (snap.fire.compartment && snap.fire.status === "burning") {
    const c = byId.get(snap.fire.compartment);
    if (c) {
      const [x, y] = toCanvas(view, c.x, c.y);
      const size = 16 + (snap.fire.intensity / 100) * 26 + Math.sin(pulse * 6) * 2;
      ctx.font = `${size}px system-ui, sans-serif`;
      ctx.fillText("\u{1F525}", x, y + 6);
    }
  }

  // avatar
  const [mx, my] = avatarPosition(level.layout, snap);
  const [ax, ay] = toCanvas(view, mx, my);
  ctx.beginPath();
  ctx.arc(ax, ay, 9, 0, Math.PI * 2);
  ctx.fillStyle = "#e8b64c";
  ctx.fill();
  ctx.strokeStyle = "#111";
  ctx.lineWidth = 2;
  ctx.stroke();
  if (snap.trainee.carrying_extinguisher) {
    ctx.font = "13px system-ui, sans-serif";
    ctx.fillText("\u{1F9EF}", ax + 13, ay - 8);
  }
  if (snap.trainee.applying_agent) {
    ctx.fillStyle = "#bfe3ff";
    ctx.font = "12px system-ui, sans-serif";
    ctx.fillText("\u{1F4A8}", ax - 14, ay - 8);
  }

  // cue badges hover near the avatar
  let badgeY = ay - 22;
  if (snap.cues.includes("visual")) {
    ctx.font = "16px system-ui, sans-serif";
    ctx.fillText("\u{1F525}", ax, badgeY);
    badgeY -= 18;
  }
  if (snap.cues.includes("auditory")) {
    const wobble = 14 + Math.sin(pulse * 10) * 2;
    ctx.font = `${wobble}px system-ui, sans-serif`;
    ctx.fillText("\u{1F50A}", ax, badgeY);
  }
  return view;
}

function roundRect(
  ctx: CanvasRenderingContext2D,
  x: number,
  y: number,
  w: number,
  h: number,
  r: number,
): void {
  ctx.beginPath();
  ctx.moveTo(x + r, y);
  ctx.arcTo(x + w, y, x + w, y + h, r);
  ctx.arcTo(x + w, y + h, x, y + h, r);
  ctx.arcTo(x, y + h, x, y, r);
  ctx.arcTo(x, y, x + w, y, r);
  ctx.closePath();
}
