import { describe, expect, it } from "vitest";

import {
  applyAction,
  emptyDocument,
  newDraft,
  serializeDocument,
  type EditorAction,
} from "../src/document.js";
import { UndoManager } from "../src/undo.js";
import type { EditorDocument } from "../src/types.js";

function seedDoc(): EditorDocument {
  const draft = newDraft("p", "poly");
  draft.vertices = [
    { p: { x: 0, y: 0 }, n: null },
    { p: { x: 1, y: 0 }, n: null },
    { p: { x: 1, y: 1 }, n: null },
  ];
  return applyAction(emptyDocument(), { kind: "add-polygon", draft });
}

const EDITS: EditorAction[] = [
  { kind: "drag-vertex", polygonId: "p", index: 0, to: { x: -0.5, y: 0.25 } },
  { kind: "extend", polygonId: "p", point: { x: 2, y: 2 } },
  { kind: "toggle-closed", polygonId: "p" },
  { kind: "rotate-normal", polygonId: "p", index: 1, toAngle: 0.7 },
  { kind: "set-levels", polygonId: "p", levels: 6 },
];

describe("UndoManager", () => {
  it("undo returns to the exact previous serialization", () => {
    const mgr = new UndoManager(seedDoc());
    const snapshots = [serializeDocument(mgr.document)];
    for (const action of EDITS) {
      mgr.apply(action);
      snapshots.push(serializeDocument(mgr.document));
    }
    for (let i = EDITS.length; i > 0; i--) {
      mgr.undo();
      expect(serializeDocument(mgr.document)).toBe(snapshots[i - 1]);
    }
    expect(mgr.canUndo()).toBe(false);
  });

  it("redo replays forward byte-identically", () => {
    const mgr = new UndoManager(seedDoc());
    for (const action of EDITS) mgr.apply(action);
    const final = serializeDocument(mgr.document);
    for (let i = 0; i < EDITS.length; i++) mgr.undo();
    for (let i = 0; i < EDITS.length; i++) mgr.redo();
    expect(serializeDocument(mgr.document)).toBe(final);
    expect(mgr.canRedo()).toBe(false);
  });

  it("a fresh action clears the redo branch", () => {
    const mgr = new UndoManager(seedDoc());
    mgr.apply(EDITS[0]);
    mgr.apply(EDITS[1]);
    mgr.undo();
    mgr.apply({ kind: "drag-vertex", polygonId: "p", index: 2, to: { x: 9, y: 9 } });
    expect(mgr.canRedo()).toBe(false);
  });

  it("history replay always matches the live document", () => {
    const mgr = new UndoManager(seedDoc());
    const rng = (() => {
      let s = 42;
      return () => (s = (s * 1664525 + 1013904223) % 4294967296) / 4294967296;
    })();
    for (let step = 0; step < 60; step++) {
      const r = rng();
      if (r < 0.5) {
        mgr.apply({
          kind: "drag-vertex",
          polygonId: "p",
          index: Math.floor(rng() * 3),
          to: { x: rng() * 4 - 2, y: rng() * 4 - 2 },
        });
      } else if (r < 0.7 && mgr.canUndo()) {
        mgr.undo();
      } else if (r < 0.8 && mgr.canRedo()) {
        mgr.redo();
      } else {
        mgr.apply({
          kind: "rotate-normal",
          polygonId: "p",
          index: Math.floor(rng() * 3),
          toAngle: rng() * 6 - 3,
        });
      }
      expect(serializeDocument(mgr.replayAll())).toBe(serializeDocument(mgr.document));
    }
  });
});
