// Pure helpers turning layout metres into canvas pixels.

import type { LayoutInfo, Snapshot } from "./protocol.js";

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function fitLayout(layout: LayoutInfo, width: number, height: number, margin = 50): Viewport {
  const xs = layout.compartments.map((c) => c.x);
  const ys = layout.compartments.map((c) => c.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1);
  const spanY = Math.max(maxY - minY, 1);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  return {
    scale,
    offsetX: margin - minX * scale + (width - 2 * margin - spanX * scale) / 2,
    offsetY: margin - minY * scale + (height - 2 * margin - spanY * scale) / 2,
  };
}

export function toCanvas(view: Viewport, x: number, y: number): [number, number] {
  return [x * view.scale + view.offsetX, y * view.scale + view.offsetY];
}

/** Avatar position, interpolated along the passage while in transit. */
export function avatarPosition(layout: LayoutInfo, snap: Snapshot): [number, number] {
  const byId = new Map(layout.compartments.map((c) => [c.id, c]));
  const transit = snap.trainee.in_transit;
  if (transit) {
    const a = byId.get(transit.from);
    const b = byId.get(transit.to);
    if (a && b) {
      const t = Math.max(0, Math.min(1, transit.progress));
      return [a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t];
    }
  }
  const here = byId.get(snap.trainee.compartment);
  return here ? [here.x, here.y] : [0, 0];
}

/** Compartment under a canvas click, if any (compartments drawn as boxes). */
export function compartmentAt(
  layout: LayoutInfo,
  view: Viewport,
  px: number,
  py: number,
  half = 34,
): string | null {
  for (const c of layout.compartments) {
    const [cx, cy] = toCanvas(view, c.x, c.y);
    if (Math.abs(px - cx) <= half && Math.abs(py - cy) <= half) return c.id;
  }
  return null;
}
