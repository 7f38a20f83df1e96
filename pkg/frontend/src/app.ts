/** Browser wiring: mouse/keyboard events in, canvas paints out. */

import { RefineClient } from "./client.js";
import { newDraft, serializePolygonFile } from "./document.js";
import { curvesToSvg, draw } from "./render.js";
import { EditorSession } from "./session.js";
import type { SchemeName, Vec2 } from "./types.js";
import {
  type Viewport,
  angleFromHandleDrag,
  fitViewport,
  hitTestPoint,
  normalHandleScreen,
  screenToWorld,
} from "./view.js";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8075";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function startApp(): void {
  const canvas = el<HTMLCanvasElement>("canvas");
  const ctx = canvas.getContext("2d")!;
  const session = new EditorSession(new RefineClient(SERVICE_URL));
  let view: Viewport = { scale: 60, offsetX: canvas.width / 2, offsetY: canvas.height / 2 };
  let polygonCounter = 0;
  let activePolygonId: string | null = null;
  let pendingVertexMode = false;

  const schemeSelect = el<HTMLSelectElement>("scheme");
  const mInput = el<HTMLInputElement>("m");
  const levelsInput = el<HTMLInputElement>("levels");
  const bannerBox = el<HTMLDivElement>("banner");
  const statusBox = el<HTMLSpanElement>("status");

  function activePolygon() {
    return session.document.polygons.find((p) => p.id === activePolygonId) ?? null;
  }

  function repaint(): void {
    const normals = new Map(
      session.document.polygons.map((p) => [p.id, session.effectiveNormals(p.id)]),
    );
    draw(ctx, {
      doc: session.document,
      curves: session.curves,
      normals,
      selection: session.selection,
      view,
    });
    bannerBox.textContent = session.banner ? session.banner.text : "";
    bannerBox.style.display = session.banner ? "block" : "none";
    const poly = activePolygon();
    if (poly) {
      schemeSelect.value = poly.settings.scheme;
      mInput.value = String(poly.settings.m);
      levelsInput.value = String(poly.settings.levels);
    }
    statusBox.textContent =
      `${session.document.polygons.length} polygon(s), ` +
      `${session.client.requestCount} refine call(s)`;
  }

  session.onChange = repaint;

  function cursorPos(ev: MouseEvent): Vec2 {
    const rect = canvas.getBoundingClientRect();
    return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  }

  function hitVertexOrHandle(cursor: Vec2):
    | { kind: "vertex" | "normal"; polygonId: string; index: number }
    | null {
    for (const poly of session.document.polygons) {
      const normals = session.effectiveNormals(poly.id);
      for (let i = 0; i < poly.vertices.length; i++) {
        const n = normals[i];
        if (n) {
          const tip = normalHandleScreen(view, poly.vertices[i].p, n);
          if (Math.hypot(tip.x - cursor.x, tip.y - cursor.y) <= 8) {
            return { kind: "normal", polygonId: poly.id, index: i };
          }
        }
      }
      for (let i = 0; i < poly.vertices.length; i++) {
        if (hitTestPoint(view, poly.vertices[i].p, cursor)) {
          return { kind: "vertex", polygonId: poly.id, index: i };
        }
      }
    }
    return null;
  }

  canvas.addEventListener("mousedown", (ev) => {
    const cursor = cursorPos(ev);
    if (pendingVertexMode) {
      const poly = activePolygon();
      if (poly) {
        session.apply({
          kind: "extend",
          polygonId: poly.id,
          point: screenToWorld(view, cursor),
        });
      }
      return;
    }
    const hit = hitVertexOrHandle(cursor);
    if (hit) {
      activePolygonId = hit.polygonId;
      session.beginDrag(hit.kind, hit.polygonId, hit.index);
    }
  });

  canvas.addEventListener("mousemove", (ev) => {
    if (!session.dragging) return;
    const cursor = cursorPos(ev);
    const sel = session.selection;
    if (sel.kind === "vertex") {
      session.moveDrag(screenToWorld(view, cursor));
    } else if (sel.kind === "normal") {
      const poly = session.document.polygons.find((p) => p.id === sel.polygonId);
      if (poly) {
        session.moveDrag(angleFromHandleDrag(view, poly.vertices[sel.index].p, cursor));
      }
    }
  });

  window.addEventListener("mouseup", () => session.endDrag());

  window.addEventListener("keydown", (ev) => {
    if ((ev.ctrlKey || ev.metaKey) && ev.key === "z" && !ev.shiftKey) {
      ev.preventDefault();
      session.undo();
    } else if ((ev.ctrlKey || ev.metaKey) && (ev.key === "y" || (ev.key === "z" && ev.shiftKey))) {
      ev.preventDefault();
      session.redo();
    } else if (ev.key === "Escape") {
      session.cancelDrag();
      pendingVertexMode = false;
    }
  });

  el<HTMLButtonElement>("new-polygon").addEventListener("click", () => {
    polygonCounter += 1;
    const draft = newDraft(`poly-${Date.now()}-${polygonCounter}`, `polygon ${polygonCounter}`);
    session.apply({ kind: "add-polygon", draft });
    activePolygonId = draft.id;
    pendingVertexMode = true;
  });

  el<HTMLButtonElement>("add-vertices").addEventListener("click", () => {
    pendingVertexMode = !pendingVertexMode;
  });

  el<HTMLButtonElement>("toggle-closed").addEventListener("click", () => {
    const poly = activePolygon();
    if (poly) session.apply({ kind: "toggle-closed", polygonId: poly.id });
  });

  el<HTMLButtonElement>("reflect").addEventListener("click", () => {
    const poly = activePolygon();
    if (!poly || poly.vertices.length === 0) return;
    const xs = poly.vertices.map((v) => v.p.x);
    const axisX = Math.max(...xs); // mirror across the rightmost vertex line
    session.apply({ kind: "reflect", polygonId: poly.id, axisX, mode: "complete" });
  });

  el<HTMLButtonElement>("delete-vertex").addEventListener("click", () => {
    const sel = session.selection;
    if (sel.kind === "vertex") {
      session.apply({ kind: "delete-vertex", polygonId: sel.polygonId, index: sel.index });
    }
  });

  el<HTMLButtonElement>("undo").addEventListener("click", () => session.undo());
  el<HTMLButtonElement>("redo").addEventListener("click", () => session.redo());

  schemeSelect.addEventListener("change", () => {
    const poly = activePolygon();
    if (poly) {
      session.apply({
        kind: "switch-scheme",
        polygonId: poly.id,
        scheme: schemeSelect.value as SchemeName,
      });
    }
  });
  mInput.addEventListener("change", () => {
    const poly = activePolygon();
    if (poly) session.apply({ kind: "set-m", polygonId: poly.id, m: Number(mInput.value) });
  });
  levelsInput.addEventListener("change", () => {
    const poly = activePolygon();
    if (poly) {
      session.apply({ kind: "set-levels", polygonId: poly.id, levels: Number(levelsInput.value) });
    }
  });

  el<HTMLButtonElement>("fit").addEventListener("click", () => {
    const pts = session.document.polygons.flatMap((p) => p.vertices.map((v) => v.p));
    view = fitViewport(pts, canvas.width, canvas.height);
    repaint();
  });

  el<HTMLButtonElement>("save").addEventListener("click", () => {
    const blob = new Blob([session.serialize()], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "drawing.json";
    a.click();
    URL.revokeObjectURL(a.href);
  });

  el<HTMLButtonElement>("export-pnp").addEventListener("click", () => {
    const poly = activePolygon();
    if (!poly) return;
    const blob = new Blob([serializePolygonFile(poly)], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `${poly.name.replace(/\s+/g, "_")}.pnp`;
    a.click();
    URL.revokeObjectURL(a.href);
  });

  el<HTMLInputElement>("load").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    session.load(await file.text());
    activePolygonId = session.document.polygons[0]?.id ?? null;
    el<HTMLButtonElement>("fit").click();
  });

  el<HTMLButtonElement>("download-svg").addEventListener("click", () => {
    const normals = new Map(
      session.document.polygons.map((p) => [p.id, session.effectiveNormals(p.id)]),
    );
    const svg = curvesToSvg(
      { doc: session.document, curves: session.curves, normals, selection: session.selection, view },
      canvas.width,
      canvas.height,
    );
    const blob = new Blob([svg], { type: "image/svg+xml" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "curve.svg";
    a.click();
    URL.revokeObjectURL(a.href);
  });

  session.client.health().then((ok) => {
    if (!ok) {
      session.banner = {
        text: `refine service unreachable at ${SERVICE_URL} (start: circleavg serve)`,
        polygonId: null,
        vertexIndex: null,
      };
    }
    repaint();
  });

  repaint();
}

startApp();
