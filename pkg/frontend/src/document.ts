/**
 * Document model: named point-normal polygon drafts plus per-polygon scheme
 * settings. All edits are expressed as plain action values applied by a pure
 * reducer, so an action list replays deterministically onto the initial
 * document (the undo machinery relies on exactly that).
 *
 * No curve math happens here: the only geometry is the affine bookkeeping of
 * the edits themselves (moving points, rotating unit normals, mirroring
 * across a vertical axis). Every displayed curve comes from the service.
 */

import type {
  EditorDocument,
  PnpVertex,
  PolygonDraft,
  PolygonFile,
  PolygonFilePoint,
  SchemeName,
  Vec2,
} from "./types.js";

export type EditorAction =
  | { kind: "add-polygon"; draft: PolygonDraft }
  | { kind: "delete-polygon"; polygonId: string }
  | { kind: "drag-vertex"; polygonId: string; index: number; to: Vec2 }
  | { kind: "rotate-normal"; polygonId: string; index: number; toAngle: number }
  | { kind: "set-normals"; polygonId: string; normals: Vec2[] }
  | { kind: "add-vertex"; polygonId: string; index: number; vertex: PnpVertex }
  | { kind: "delete-vertex"; polygonId: string; index: number }
  | { kind: "extend"; polygonId: string; point: Vec2 }
  | { kind: "reflect"; polygonId: string; axisX: number; mode: "replace" | "complete" }
  | { kind: "toggle-closed"; polygonId: string }
  | { kind: "switch-scheme"; polygonId: string; scheme: SchemeName }
  | { kind: "set-m"; polygonId: string; m: number }
  | { kind: "set-levels"; polygonId: string; levels: number }
  | { kind: "rename"; polygonId: string; name: string };

export class ActionError extends Error {}

export function emptyDocument(): EditorDocument {
  return { polygons: [] };
}

export function newDraft(id: string, name: string): PolygonDraft {
  return {
    id,
    name,
    closed: false,
    vertices: [],
    settings: { scheme: "mlr", m: 1, levels: 4 },
  };
}

function clonePolygon(p: PolygonDraft): PolygonDraft {
  return {
    ...p,
    settings: { ...p.settings },
    vertices: p.vertices.map((v) => ({
      p: { ...v.p },
      n: v.n ? { ...v.n } : null,
    })),
  };
}

function findPolygon(doc: EditorDocument, id: string): number {
  const i = doc.polygons.findIndex((p) => p.id === id);
  if (i < 0) throw new ActionError(`no polygon with id ${id}`);
  return i;
}

function withPolygon(
  doc: EditorDocument,
  id: string,
  edit: (p: PolygonDraft) => void,
): EditorDocument {
  const i = findPolygon(doc, id);
  const polygons = doc.polygons.slice();
  const copy = clonePolygon(polygons[i]);
  edit(copy);
  polygons[i] = copy;
  return { polygons };
}

function noNegZero(x: number): number {
  return x === 0 ? 0 : x;
}

function mirroredVertex(v: PnpVertex, axisX: number): PnpVertex {
  return {
    p: { x: noNegZero(2 * axisX - v.p.x), y: v.p.y },
    n: v.n ? { x: noNegZero(-v.n.x), y: v.n.y } : null,
  };
}

/** Pure reducer: returns a new document, never mutates the input. */
export function applyAction(doc: EditorDocument, action: EditorAction): EditorDocument {
  switch (action.kind) {
    case "add-polygon": {
      if (doc.polygons.some((p) => p.id === action.draft.id)) {
        throw new ActionError(`duplicate polygon id ${action.draft.id}`);
      }
      return { polygons: [...doc.polygons, clonePolygon(action.draft)] };
    }
    case "delete-polygon": {
      const i = findPolygon(doc, action.polygonId);
      const polygons = doc.polygons.slice();
      polygons.splice(i, 1);
      return { polygons };
    }
    case "drag-vertex":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.index < 0 || action.index >= p.vertices.length) {
          throw new ActionError(`vertex index ${action.index} out of range`);
        }
        p.vertices[action.index].p = { ...action.to };
      });
    case "rotate-normal":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.index < 0 || action.index >= p.vertices.length) {
          throw new ActionError(`vertex index ${action.index} out of range`);
        }
        p.vertices[action.index].n = {
          x: Math.cos(action.toAngle),
          y: Math.sin(action.toAngle),
        };
      });
    case "set-normals":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.normals.length !== p.vertices.length) {
          throw new ActionError("normal count must match vertex count");
        }
        p.vertices.forEach((v, i) => {
          v.n = { ...action.normals[i] };
        });
      });
    case "add-vertex":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.index < 0 || action.index > p.vertices.length) {
          throw new ActionError(`insert index ${action.index} out of range`);
        }
        p.vertices.splice(action.index, 0, {
          p: { ...action.vertex.p },
          n: action.vertex.n ? { ...action.vertex.n } : null,
        });
      });
    case "delete-vertex":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.index < 0 || action.index >= p.vertices.length) {
          throw new ActionError(`vertex index ${action.index} out of range`);
        }
        const min = p.closed ? 4 : 3;
        if (p.vertices.length < min) {
          throw new ActionError("polygon would become degenerate");
        }
        p.vertices.splice(action.index, 1);
      });
    case "extend":
      return withPolygon(doc, action.polygonId, (p) => {
        if (p.closed) throw new ActionError("cannot extend a closed polygon");
        p.vertices.push({ p: { ...action.point }, n: null });
      });
    case "reflect":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.mode === "replace") {
          p.vertices = p.vertices.map((v) => mirroredVertex(v, action.axisX));
          return;
        }
        // Symmetric completion: append the mirror image of the polyline in
        // reverse order, skipping vertices sitting on the axis, and close.
        if (p.closed) throw new ActionError("complete-reflect needs an open polyline");
        if (p.vertices.length < 2) throw new ActionError("nothing to reflect");
        const eps = 1e-9;
        const mirrored = p.vertices
          .slice()
          .reverse()
          .filter((v) => Math.abs(v.p.x - action.axisX) > eps)
          .map((v) => mirroredVertex(v, action.axisX));
        p.vertices = p.vertices.concat(mirrored);
        p.closed = true;
      });
    case "toggle-closed":
      return withPolygon(doc, action.polygonId, (p) => {
        if (!p.closed && p.vertices.length < 3) {
          throw new ActionError("a closed polygon needs at least 3 vertices");
        }
        p.closed = !p.closed;
      });
    case "switch-scheme":
      return withPolygon(doc, action.polygonId, (p) => {
        p.settings.scheme = action.scheme;
      });
    case "set-m":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.m < 1) throw new ActionError("m must be >= 1");
        p.settings.m = action.m;
      });
    case "set-levels":
      return withPolygon(doc, action.polygonId, (p) => {
        if (action.levels < 0 || action.levels > 20) {
          throw new ActionError("levels must be in [0, 20]");
        }
        p.settings.levels = action.levels;
      });
    case "rename":
      return withPolygon(doc, action.polygonId, (p) => {
        p.name = action.name;
      });
  }
}

export function replay(initial: EditorDocument, actions: EditorAction[]): EditorDocument {
  return actions.reduce(applyAction, initial);
}

/** Canonical single-polygon file, exactly the CLI's format. */
export function toPolygonFile(draft: PolygonDraft): PolygonFile {
  const withNormals = draft.vertices.every((v) => v.n !== null);
  const points: PolygonFilePoint[] = draft.vertices.map((v) => {
    const rec: PolygonFilePoint = { p: [v.p.x, v.p.y] };
    if (withNormals && v.n) rec.n = [v.n.x, v.n.y];
    return rec;
  });
  return { closed: draft.closed, points };
}

export function fromPolygonFile(
  file: PolygonFile,
  id: string,
  name: string,
): PolygonDraft {
  const draft = newDraft(id, name);
  draft.closed = Boolean(file.closed);
  draft.vertices = file.points.map((rec) => ({
    p: { x: rec.p[0], y: rec.p[1] },
    n: rec.n ? { x: rec.n[0], y: rec.n[1] } : null,
  }));
  return draft;
}

interface DocumentFilePolygon {
  name: string;
  settings: PolygonDraft["settings"];
  polygon: PolygonFile;
}

export interface DocumentFile {
  polygons: DocumentFilePolygon[];
}

/**
 * Whole-document save format: an envelope of canonical polygon files, so
 * each entry round-trips through the CLI unchanged. JSON.stringify emits
 * shortest round-trip decimals, which re-parse to identical doubles.
 */
export function serializeDocument(doc: EditorDocument): string {
  const out: DocumentFile = {
    polygons: doc.polygons.map((p) => ({
      name: p.name,
      settings: { ...p.settings },
      polygon: toPolygonFile(p),
    })),
  };
  return JSON.stringify(out, null, 1);
}

/** Canonical single-polygon file text (importable by the CLI). */
export function serializePolygonFile(draft: PolygonDraft): string {
  return JSON.stringify(toPolygonFile(draft), null, 1) + "\n";
}

export function deserializeDocument(text: string): EditorDocument {
  const raw = JSON.parse(text) as DocumentFile | PolygonFile;
  // a bare canonical polygon file imports as a one-polygon document
  if (raw && Array.isArray((raw as PolygonFile).points)) {
    return {
      polygons: [fromPolygonFile(raw as PolygonFile, "poly-0", "imported")],
    };
  }
  const doc = raw as DocumentFile;
  if (!doc || !Array.isArray(doc.polygons)) {
    throw new ActionError("neither an editor document nor a polygon file");
  }
  return {
    polygons: doc.polygons.map((entry, i) => {
      const draft = fromPolygonFile(entry.polygon, `poly-${i}`, entry.name ?? `polygon ${i}`);
      draft.settings = { ...draft.settings, ...entry.settings };
      return draft;
    }),
  };
}
