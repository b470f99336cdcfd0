// Types and validation for the scene documents served at
// /api/collections/{id}/visspec. The viewer treats these documents as the
// complete truth: positions, sizes, colors, and timing all come from the
// server, and nothing here recomputes them.

export const SUPPORTED_SCHEMA_VERSION = 1;

export interface EgoDisc {
  x: number;
  y: number;
  radius: number;
  color: number;
  paper_count: number;
}

export interface SceneNode {
  id: string;
  year: number;
  x: number;
  y: number;
  radius: number;
  color: number;
  title: string;
  venue: string;
  authors: string[];
  eigenfactor: number;
  url?: string;
}

export interface SceneEdge {
  source: number;
  target: number | "ego";
  weight: number;
}

export interface PaletteEntry {
  domain: string;
  color: number;
}

export interface Appearance {
  node: number;
  offset: number;
}

export interface LinkFire {
  edge: number;
  offset: number;
}

export interface Segment {
  year: number;
  duration: number;
  appearances: Appearance[];
  links: LinkFire[];
}

export interface Timelines {
  years: number[];
  publications: number[];
  citations_received: number[];
  ef_sum: number[];
  funding_phase: string[];
}

export interface VisSpec {
  schema_version: number;
  scholar: string;
  corpus_hash: string;
  ego: EgoDisc;
  nodes: SceneNode[];
  edges: SceneEdge[];
  palette: PaletteEntry[];
  schedule: Segment[];
  timelines: Timelines;
  shape_stats: Record<string, number>;
  diagnostics?: Record<string, number>;
}

export class SchemaError extends Error {
  readonly gotVersion: number | undefined;
  readonly supportedVersion = SUPPORTED_SCHEMA_VERSION;

  constructor(message: string, gotVersion?: number) {
    super(message);
    this.name = "SchemaError";
    this.gotVersion = gotVersion;
  }
}

const REQUIRED_KEYS = [
  "schema_version",
  "scholar",
  "ego",
  "nodes",
  "edges",
  "palette",
  "schedule",
  "timelines",
  "shape_stats",
] as const;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

/**
 * Validate a decoded JSON value as a scene document. Throws SchemaError with
 * version details so the app can show a precise blocking panel instead of a
 * half-rendered scene.
 */
export function parseVisSpec(raw: unknown): VisSpec {
  if (!isRecord(raw)) {
    throw new SchemaError("scene document is not a JSON object");
  }
  const version = raw["schema_version"];
  if (typeof version !== "number" || version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaError(
      `unsupported scene schema version ${String(version)} ` +
        `(this viewer supports version ${SUPPORTED_SCHEMA_VERSION})`,
      typeof version === "number" ? version : undefined,
    );
  }
  for (const key of REQUIRED_KEYS) {
    if (!(key in raw)) {
      throw new SchemaError(`scene document is missing the "${key}" key`);
    }
  }
  const spec = raw as unknown as VisSpec;
  if (!Array.isArray(spec.nodes) || !Array.isArray(spec.edges)) {
    throw new SchemaError("nodes and edges must be arrays");
  }
  const n = spec.nodes.length;
  spec.edges.forEach((edge, i) => {
    if (!Number.isInteger(edge.source) || edge.source < 0 || edge.source >= n) {
      throw new SchemaError(`edge ${i} has source outside the node list`);
    }
    const target = edge.target;
    if (target !== "ego" && (!Number.isInteger(target) || target < 0 || target >= n)) {
      throw new SchemaError(`edge ${i} has target outside the node list`);
    }
  });
  if (!Array.isArray(spec.schedule)) {
    throw new SchemaError("schedule must be an array");
  }
  return spec;
}
