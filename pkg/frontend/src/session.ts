/**
 * Editor session: one document, its undo history, selection, at most one
 * active drag, and the service client that keeps every polygon's curve
 * fresh. Platform-free; the DOM layer only forwards events and repaints.
 *
 * Normals the user never touched stay null in the document (so files export
 * without them and the naive initialization applies on load); the service's
 * echo of the filled normals is kept aside purely for drawing handles, and
 * is materialized into the document as an undoable step the moment the user
 * first grabs a handle.
 */

import { RefineClient, RefineServiceError } from "./client.js";
import {
  ActionError,
  deserializeDocument,
  serializeDocument,
  toPolygonFile,
  type EditorAction,
} from "./document.js";
import type {
  EditorDocument,
  PolygonDraft,
  PolygonFile,
  RefineRequest,
  Selection,
  Vec2,
} from "./types.js";
import { UndoManager } from "./undo.js";

export interface Banner {
  text: string;
  polygonId: string | null;
  vertexIndex: number | null;
}

interface DragState {
  polygonId: string;
  index: number;
  kind: "vertex" | "normal";
  moved: boolean;
}

export class EditorSession {
  private undoManager: UndoManager;
  readonly client: RefineClient;
  readonly curves = new Map<string, PolygonFile>();
  /** Service-filled normals per polygon, for handle display only. */
  private readonly filledNormals = new Map<string, (Vec2 | null)[]>();
  selection: Selection = { kind: "none" };
  banner: Banner | null = null;
  onChange: (() => void) | null = null;
  private drag: DragState | null = null;

  constructor(client: RefineClient, initial?: EditorDocument) {
    this.client = client;
    this.undoManager = new UndoManager(initial ?? { polygons: [] });
  }

  get document(): EditorDocument {
    return this.undoManager.document;
  }

  get dragging(): boolean {
    return this.drag !== null;
  }

  private notify(): void {
    this.onChange?.();
  }

  private setBanner(banner: Banner | null): void {
    this.banner = banner;
    this.notify();
  }

  // -- persistence ---------------------------------------------------------

  serialize(): string {
    return serializeDocument(this.document);
  }

  /** Replace the whole document (fresh history); refresh every curve. */
  load(text: string): void {
    const doc = deserializeDocument(text);
    this.undoManager = new UndoManager(doc);
    this.curves.clear();
    this.filledNormals.clear();
    this.selection = { kind: "none" };
    this.banner = null;
    for (const poly of doc.polygons) this.requestRefresh(poly.id);
    this.notify();
  }

  // -- refinement plumbing --------------------------------------------------

  refineRequestFor(poly: PolygonDraft): RefineRequest {
    const file = toPolygonFile(poly);
    return {
      scheme: poly.settings.scheme,
      m: poly.settings.m,
      levels: poly.settings.levels,
      closed: file.closed,
      points: file.points,
    };
  }

  /** Debounced refresh of one polygon's curve. */
  requestRefresh(polygonId: string): void {
    const poly = this.document.polygons.find((p) => p.id === polygonId);
    if (!poly || poly.vertices.length < 2) {
      this.curves.delete(polygonId);
      this.notify();
      return;
    }
    this.client
      .scheduleRefine(polygonId, this.refineRequestFor(poly))
      .then((response) => {
        this.curves.set(polygonId, response.result);
        this.filledNormals.set(
          polygonId,
          response.initial.points.map((rec) =>
            rec.n ? { x: rec.n[0], y: rec.n[1] } : null,
          ),
        );
        this.setBanner(null);
      })
      .catch((err) => {
        if (err instanceof RefineServiceError) {
          this.setBanner({
            text:
              err.detail.index !== null
                ? `${err.detail.code} at vertex ${err.detail.index}`
                : err.detail.code,
            polygonId,
            vertexIndex: err.detail.index,
          });
        } else {
          this.setBanner({ text: String(err), polygonId, vertexIndex: null });
        }
      });
  }

  /** Document normals with service-filled fallbacks, for drawing handles. */
  effectiveNormals(polygonId: string): (Vec2 | null)[] {
    const poly = this.document.polygons.find((p) => p.id === polygonId);
    if (!poly) return [];
    const filled = this.filledNormals.get(polygonId);
    return poly.vertices.map((v, i) => v.n ?? (filled && filled.length === poly.vertices.length ? filled[i] : null));
  }

  // -- undoable edits -------------------------------------------------------

  /** Apply an action, record it, refresh the affected polygon. */
  apply(action: EditorAction): boolean {
    try {
      this.undoManager.apply(action);
    } catch (err) {
      if (err instanceof ActionError) {
        this.setBanner({ text: err.message, polygonId: null, vertexIndex: null });
        return false;
      }
      throw err;
    }
    const polygonId = "polygonId" in action ? action.polygonId : action.draft.id;
    this.requestRefresh(polygonId);
    this.notify();
    return true;
  }

  undo(): void {
    if (!this.undoManager.canUndo()) return;
    this.undoManager.undo();
    this.refreshAll();
  }

  redo(): void {
    if (!this.undoManager.canRedo()) return;
    this.undoManager.redo();
    this.refreshAll();
  }

  canUndo(): boolean {
    return this.undoManager.canUndo();
  }

  canRedo(): boolean {
    return this.undoManager.canRedo();
  }

  historyReplaysExactly(): boolean {
    return serializeDocument(this.undoManager.replayAll()) === this.serialize();
  }

  private refreshAll(): void {
    for (const poly of this.document.polygons) this.requestRefresh(poly.id);
    this.notify();
  }

  // -- drag lifecycle --------------------------------------------------------

  beginDrag(kind: "vertex" | "normal", polygonId: string, index: number): boolean {
    if (this.drag) return false; // at most one active drag
    const poly = this.document.polygons.find((p) => p.id === polygonId);
    if (!poly || index < 0 || index >= poly.vertices.length) return false;
    if (kind === "normal") {
      const effective = this.effectiveNormals(polygonId);
      if (!effective[index]) return false; // nothing known to rotate yet
      if (poly.vertices.some((v) => v.n === null)) {
        // first touch of any handle adopts the displayed normals as real
        const normals = effective.map((n) => n as Vec2);
        if (normals.some((n) => !n)) return false;
        if (!this.apply({ kind: "set-normals", polygonId, normals })) return false;
      }
    }
    this.drag = { polygonId, index, kind, moved: false };
    this.selection = { kind, polygonId, index };
    this.notify();
    return true;
  }

  /**
   * Live update during a drag: the document changes and a debounced
   * refresh is issued, but consecutive updates of one gesture collapse
   * into a single history entry.
   */
  moveDrag(value: Vec2 | number): void {
    if (!this.drag) return;
    const { polygonId, index, kind } = this.drag;
    const action: EditorAction =
      kind === "vertex"
        ? { kind: "drag-vertex", polygonId, index, to: value as Vec2 }
        : { kind: "rotate-normal", polygonId, index, toAngle: value as number };
    if (this.drag.moved) this.undoManager.undo();
    this.undoManager.apply(action);
    this.drag.moved = true;
    this.requestRefresh(polygonId);
    this.notify();
  }

  endDrag(): void {
    if (!this.drag) return;
    this.drag = null;
    this.notify();
  }

  cancelDrag(): void {
    if (!this.drag) return;
    const { polygonId, moved } = this.drag;
    if (moved) this.undoManager.undo();
    this.drag = null;
    this.requestRefresh(polygonId);
    this.notify();
  }
}
