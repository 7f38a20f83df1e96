export interface Vec2 {
  x: number;
  y: number;
}

export type SchemeName = "mlr" | "m4pt" | "llr" | "l4pt";

export interface PnpVertex {
  p: Vec2;
  /** Unit normal; absent until the service fills it (naive initialization). */
  n: Vec2 | null;
}

export interface SchemeSettings {
  scheme: SchemeName;
  m: number;
  levels: number;
}

export interface PolygonDraft {
  id: string;
  name: string;
  closed: boolean;
  vertices: PnpVertex[];
  settings: SchemeSettings;
}

export interface EditorDocument {
  polygons: PolygonDraft[];
}

export type Selection =
  | { kind: "none" }
  | { kind: "vertex"; polygonId: string; index: number }
  | { kind: "normal"; polygonId: string; index: number };

/** Canonical polygon file format shared with the CLI and the service. */
export interface PolygonFilePoint {
  p: [number, number];
  n?: [number, number];
}

export interface PolygonFile {
  closed: boolean;
  points: PolygonFilePoint[];
}

export interface RefineRequest {
  scheme: SchemeName;
  m: number;
  levels: number;
  closed: boolean;
  points: PolygonFilePoint[];
}

export interface Diagnostics {
  edge_max: (number | null)[];
  theta_max: (number | null)[];
  mu: (number | null)[];
  /** Measured edge contraction per level; null at the last level. */
  eta_ratio: (number | null)[];
  /** Scheme's theoretical contraction bound; null for linear schemes. */
  eta_bound: (number | null)[];
}

export interface RefineResponse {
  config: { scheme: SchemeName; m: number; levels: number; closed: boolean };
  initial: PolygonFile;
  result: PolygonFile;
  diagnostics: Diagnostics;
}

export interface ServiceError {
  code: string;
  message: string;
  index: number | null;
}

export interface Capabilities {
  schemes: SchemeName[];
  m_min: number;
  m_max: number;
  level_cap: number;
  weight_domain: [number, number];
}
