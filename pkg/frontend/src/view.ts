/**
 * World <-> screen affine transform (uniform scale + translation, y flipped
 * so world y grows upward). This is the only geometry the UI computes
 * itself; curves always come from the service.
 */

import type { Vec2 } from "./types.js";

export const NORMAL_HANDLE_PX = 40;
export const VERTEX_HIT_PX = 9;

export interface Viewport {
  scale: number; // pixels per world unit
  offsetX: number; // screen x of world origin
  offsetY: number; // screen y of world origin
}

export function worldToScreen(view: Viewport, p: Vec2): Vec2 {
  return { x: view.offsetX + view.scale * p.x, y: view.offsetY - view.scale * p.y };
}

export function screenToWorld(view: Viewport, s: Vec2): Vec2 {
  return { x: (s.x - view.offsetX) / view.scale, y: (view.offsetY - s.y) / view.scale };
}

/** Screen position of a vertex's normal arrowhead (fixed screen length). */
export function normalHandleScreen(view: Viewport, p: Vec2, n: Vec2): Vec2 {
  const base = worldToScreen(view, p);
  return { x: base.x + NORMAL_HANDLE_PX * n.x, y: base.y - NORMAL_HANDLE_PX * n.y };
}

/** Normal angle (world) implied by dragging the arrowhead to a screen point. */
export function angleFromHandleDrag(view: Viewport, vertex: Vec2, screen: Vec2): number {
  const base = worldToScreen(view, vertex);
  return Math.atan2(base.y - screen.y, screen.x - base.x);
}

export function fitViewport(
  points: Vec2[],
  width: number,
  height: number,
  marginPx = 40,
): Viewport {
  if (points.length === 0) {
    return { scale: 50, offsetX: width / 2, offsetY: height / 2 };
  }
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min(
    (width - 2 * marginPx) / spanX,
    (height - 2 * marginPx) / spanY,
  );
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - scale * cx,
    offsetY: height / 2 + scale * cy,
  };
}

export function hitTestPoint(view: Viewport, candidate: Vec2, cursor: Vec2, radiusPx = VERTEX_HIT_PX): boolean {
  const s = worldToScreen(view, candidate);
  return Math.hypot(s.x - cursor.x, s.y - cursor.y) <= radiusPx;
}
