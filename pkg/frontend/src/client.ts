/**
 * Client for the refinement service. Edits arrive far faster than curves
 * are needed, so requests are debounced (~30 Hz) and at most one request
 * per polygon is in flight; when a newer edit lands while one is pending,
 * the stale response is dropped (newest wins).
 */

import type {
  Capabilities,
  RefineRequest,
  RefineResponse,
  ServiceError,
} from "./types.js";

export const DEBOUNCE_MS = 33;

export class RefineServiceError extends Error {
  readonly detail: ServiceError;

  constructor(detail: ServiceError) {
    super(`${detail.code}: ${detail.message}`);
    this.detail = detail;
  }
}

type FetchLike = typeof fetch;

interface PendingState {
  timer: ReturnType<typeof setTimeout> | null;
  request: RefineRequest | null;
  resolvers: Array<{
    resolve: (r: RefineResponse) => void;
    reject: (e: unknown) => void;
  }>;
  generation: number;
  inFlight: boolean;
}

export class RefineClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;
  private readonly debounceMs: number;
  private pending = new Map<string, PendingState>();
  /** Total network round trips issued; exposed for tests and the status bar. */
  requestCount = 0;

  constructor(baseUrl: string, fetchImpl?: FetchLike, debounceMs = DEBOUNCE_MS) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? fetch.bind(globalThis);
    this.debounceMs = debounceMs;
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchImpl(`${this.baseUrl}/health`);
      return resp.ok;
    } catch {
      return false;
    }
  }

  async capabilities(): Promise<Capabilities> {
    const resp = await this.fetchImpl(`${this.baseUrl}/capabilities`);
    if (!resp.ok) throw new Error(`capabilities failed: ${resp.status}`);
    return (await resp.json()) as Capabilities;
  }

  /** One immediate refinement round trip, no debouncing. */
  async refineNow(request: RefineRequest): Promise<RefineResponse> {
    this.requestCount += 1;
    const resp = await this.fetchImpl(`${this.baseUrl}/refine`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    const body = await resp.json();
    if (!resp.ok) {
      const detail = (body?.error ?? {
        code: "Unknown",
        message: `status ${resp.status}`,
        index: null,
      }) as ServiceError;
      throw new RefineServiceError(detail);
    }
    return body as RefineResponse;
  }

  /**
   * Debounced refinement for one polygon: rapid calls within the debounce
   * window coalesce into a single round trip carrying the newest request;
   * all coalesced callers get the same response. If an older request is
   * still in flight when the timer fires, its eventual response is ignored
   * in favor of the new one.
   */
  scheduleRefine(polygonId: string, request: RefineRequest): Promise<RefineResponse> {
    let state = this.pending.get(polygonId);
    if (!state) {
      state = { timer: null, request: null, resolvers: [], generation: 0, inFlight: false };
      this.pending.set(polygonId, state);
    }
    state.request = request;
    if (state.timer !== null) clearTimeout(state.timer);

    const promise = new Promise<RefineResponse>((resolve, reject) => {
      state!.resolvers.push({ resolve, reject });
    });

    state.timer = setTimeout(() => {
      const s = this.pending.get(polygonId);
      if (!s || s.request === null) return;
      const generation = ++s.generation;
      const req = s.request;
      const resolvers = s.resolvers;
      s.timer = null;
      s.request = null;
      s.resolvers = [];
      s.inFlight = true;
      this.refineNow(req)
        .then((response) => {
          if (s.generation === generation) {
            s.inFlight = false;
            for (const r of resolvers) r.resolve(response);
          }
          // otherwise: superseded by a newer request; drop silently
        })
        .catch((err) => {
          if (s.generation === generation) {
            s.inFlight = false;
            for (const r of resolvers) r.reject(err);
          }
        });
    }, this.debounceMs);

    return promise;
  }

  /** Drop any scheduled (not yet sent) request for the polygon. */
  cancelScheduled(polygonId: string): void {
    const state = this.pending.get(polygonId);
    if (state?.timer !== null && state !== undefined) {
      clearTimeout(state.timer);
      state.timer = null;
      state.request = null;
      state.resolvers = [];
    }
  }
}
