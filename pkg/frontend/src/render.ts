/** Canvas drawing of drafts and their service-computed curves. */

import type { EditorDocument, PolygonFile, Selection, Vec2 } from "./types.js";
import {
  NORMAL_HANDLE_PX,
  type Viewport,
  normalHandleScreen,
  worldToScreen,
} from "./view.js";

const POLYGON_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

export interface RenderState {
  doc: EditorDocument;
  curves: Map<string, PolygonFile>; // polygonId -> last service result
  /** Normals to draw (document ones with service-filled fallbacks). */
  normals: Map<string, (Vec2 | null)[]>;
  selection: Selection;
  view: Viewport;
}

export function polygonColor(index: number): string {
  return POLYGON_COLORS[index % POLYGON_COLORS.length];
}

function tracePath(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  points: Vec2[],
  closed: boolean,
): void {
  ctx.beginPath();
  points.forEach((p, i) => {
    const s = worldToScreen(view, p);
    if (i === 0) ctx.moveTo(s.x, s.y);
    else ctx.lineTo(s.x, s.y);
  });
  if (closed) ctx.closePath();
}

export function draw(ctx: CanvasRenderingContext2D, state: RenderState): void {
  const { doc, curves, normals, selection, view } = state;
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);

  doc.polygons.forEach((poly, polyIndex) => {
    const color = polygonColor(polyIndex);

    // control polygon
    if (poly.vertices.length >= 2) {
      tracePath(ctx, view, poly.vertices.map((v) => v.p), poly.closed);
      ctx.strokeStyle = "#bbbbbb";
      ctx.lineWidth = 1;
      ctx.setLineDash([5, 4]);
      ctx.stroke();
      ctx.setLineDash([]);
    }

    // refined curve from the service
    const curve = curves.get(poly.id);
    if (curve && curve.points.length >= 2) {
      tracePath(
        ctx,
        view,
        curve.points.map((rec) => ({ x: rec.p[0], y: rec.p[1] })),
        curve.closed,
      );
      ctx.strokeStyle = color;
      ctx.lineWidth = 2;
      ctx.stroke();
    }

    // vertices and normal handles
    const polyNormals = normals.get(poly.id);
    poly.vertices.forEach((v, i) => {
      const s = worldToScreen(view, v.p);
      const selected =
        selection.kind !== "none" &&
        selection.polygonId === poly.id &&
        selection.index === i;

      const n = polyNormals?.[i] ?? v.n;
      if (n) {
        const tip = normalHandleScreen(view, v.p, n);
        ctx.strokeStyle = selected && selection.kind === "normal" ? "#ff9900" : "#888888";
        ctx.lineWidth = 1.5;
        ctx.beginPath();
        ctx.moveTo(s.x, s.y);
        ctx.lineTo(tip.x, tip.y);
        ctx.stroke();
        const ang = Math.atan2(tip.y - s.y, tip.x - s.x);
        ctx.beginPath();
        ctx.moveTo(tip.x, tip.y);
        ctx.lineTo(tip.x - 7 * Math.cos(ang - 0.4), tip.y - 7 * Math.sin(ang - 0.4));
        ctx.lineTo(tip.x - 7 * Math.cos(ang + 0.4), tip.y - 7 * Math.sin(ang + 0.4));
        ctx.closePath();
        ctx.fillStyle = ctx.strokeStyle;
        ctx.fill();
      }

      ctx.beginPath();
      ctx.arc(s.x, s.y, selected && selection.kind === "vertex" ? 6 : 4, 0, 2 * Math.PI);
      ctx.fillStyle = selected ? "#ff9900" : color;
      ctx.fill();
    });
  });
}

/** SVG snapshot of the current service curves (download target). */
export function curvesToSvg(state: RenderState, width: number, height: number): string {
  const { doc, curves, view } = state;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}">`,
  ];
  doc.polygons.forEach((poly, i) => {
    const curve = curves.get(poly.id);
    if (!curve || curve.points.length < 2) return;
    const pts = curve.points
      .map((rec) => {
        const s = worldToScreen(view, { x: rec.p[0], y: rec.p[1] });
        return `${s.x.toFixed(2)},${s.y.toFixed(2)}`;
      })
      .join(" ");
    const tag = curve.closed ? "polygon" : "polyline";
    parts.push(
      `  <${tag} points="${pts}" fill="none" stroke="${polygonColor(i)}" stroke-width="1.5"/>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n");
}

export { NORMAL_HANDLE_PX };
