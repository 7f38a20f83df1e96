import { describe, expect, it, vi } from "vitest";

import { RefineClient } from "../src/client.js";
import { newDraft, serializeDocument } from "../src/document.js";
import { EditorSession } from "../src/session.js";
import type { PolygonFilePoint } from "../src/types.js";

function echoFetch() {
  // Minimal stand-in for the service: echoes the input as the "curve" and
  // fills missing normals with (0, 1).
  return vi.fn(async (_url: string, init?: RequestInit) => {
    const req = JSON.parse(String(init?.body));
    const filled = req.points.map((rec: PolygonFilePoint) => ({
      p: rec.p,
      n: rec.n ?? [0, 1],
    }));
    return {
      ok: true,
      status: 200,
      json: async () => ({
        config: { scheme: req.scheme, m: req.m, levels: req.levels, closed: req.closed },
        initial: { closed: req.closed, points: filled },
        result: { closed: req.closed, points: filled },
        diagnostics: { edge_max: [], theta_max: [], mu: [], eta_ratio: [], eta_bound: [] },
      }),
    } as unknown as Response;
  });
}

function makeSession(fetchMock: ReturnType<typeof echoFetch>) {
  const client = new RefineClient("http://svc", fetchMock as unknown as typeof fetch, 5);
  return new EditorSession(client);
}

function addTriangle(session: EditorSession, withNormals = true) {
  const draft = newDraft("t", "triangle");
  draft.vertices = [
    { p: { x: 0, y: 0 }, n: withNormals ? { x: 0, y: -1 } : null },
    { p: { x: 2, y: 0 }, n: withNormals ? { x: 1, y: 0 } : null },
    { p: { x: 0, y: 2 }, n: withNormals ? { x: -1, y: 1 / Math.sqrt(2) } : null },
  ];
  if (withNormals) draft.vertices[2].n = { x: -Math.SQRT1_2, y: Math.SQRT1_2 };
  session.apply({ kind: "add-polygon", draft });
}

const settle = () => new Promise((r) => setTimeout(r, 30));

describe("EditorSession", () => {
  it("a whole drag gesture is one undo step and one refine call", async () => {
    const fetchMock = echoFetch();
    const session = makeSession(fetchMock);
    addTriangle(session);
    await settle();
    const callsBefore = fetchMock.mock.calls.length;
    const serializedBefore = session.serialize();

    expect(session.beginDrag("vertex", "t", 1)).toBe(true);
    expect(session.beginDrag("vertex", "t", 0)).toBe(false); // one drag at a time
    session.moveDrag({ x: 2.1, y: 0.1 });
    session.moveDrag({ x: 2.2, y: 0.2 });
    session.moveDrag({ x: 2.5, y: 0.5 });
    session.endDrag();
    await settle();

    expect(fetchMock.mock.calls.length).toBe(callsBefore + 1); // debounced
    expect(session.document.polygons[0].vertices[1].p).toEqual({ x: 2.5, y: 0.5 });
    session.undo();
    expect(session.serialize()).toBe(serializedBefore); // single history entry
    expect(session.historyReplaysExactly()).toBe(true);
  });

  it("rotating a handle on a bare polygon first adopts the filled normals", async () => {
    const fetchMock = echoFetch();
    const session = makeSession(fetchMock);
    addTriangle(session, false);
    await settle(); // response delivers filled normals for display

    expect(session.effectiveNormals("t")).toEqual([
      { x: 0, y: 1 },
      { x: 0, y: 1 },
      { x: 0, y: 1 },
    ]);
    expect(session.document.polygons[0].vertices[0].n).toBeNull();

    expect(session.beginDrag("normal", "t", 0)).toBe(true);
    session.moveDrag(Math.PI / 4);
    session.endDrag();
    await settle();

    const v = session.document.polygons[0].vertices;
    expect(v[0].n!.x).toBeCloseTo(Math.SQRT1_2, 12);
    expect(v[1].n).toEqual({ x: 0, y: 1 }); // materialized, unrotated
    expect(session.historyReplaysExactly()).toBe(true);
  });

  it("service errors surface as a banner naming the vertex", async () => {
    const fetchMock = vi.fn(async () => ({
      ok: false,
      status: 422,
      json: async () => ({
        error: { code: "AntipodalNormals", message: "nope", index: 2 },
      }),
    }));
    const session = makeSession(fetchMock as unknown as ReturnType<typeof echoFetch>);
    addTriangle(session);
    await settle();
    expect(session.banner?.text).toBe("AntipodalNormals at vertex 2");
    expect(session.banner?.vertexIndex).toBe(2);
  });

  it("load issues one refine per polygon and fills curves", async () => {
    const fetchMock = echoFetch();
    const session = makeSession(fetchMock);
    addTriangle(session);
    await settle();
    const saved = session.serialize();

    const fetchMock2 = echoFetch();
    const restored = makeSession(fetchMock2);
    restored.load(saved);
    await settle();
    expect(fetchMock2.mock.calls.length).toBe(1);
    expect(restored.curves.get("poly-0")).toBeDefined();
    expect(serializeDocument(restored.document)).toBe(saved);
  });

  it("undo and redo refresh the curve", async () => {
    const fetchMock = echoFetch();
    const session = makeSession(fetchMock);
    addTriangle(session);
    await settle();
    session.apply({ kind: "drag-vertex", polygonId: "t", index: 0, to: { x: 5, y: 5 } });
    await settle();
    const before = fetchMock.mock.calls.length;
    session.undo();
    await settle();
    session.redo();
    await settle();
    expect(fetchMock.mock.calls.length).toBe(before + 2);
    expect(session.historyReplaysExactly()).toBe(true);
  });

  it("invalid edits produce a banner, not a broken document", async () => {
    const fetchMock = echoFetch();
    const session = makeSession(fetchMock);
    addTriangle(session);
    const ok = session.apply({ kind: "set-m", polygonId: "t", m: 0 });
    expect(ok).toBe(false);
    expect(session.banner?.text).toContain("m must be >= 1");
    expect(session.document.polygons[0].settings.m).toBe(1);
  });
});
