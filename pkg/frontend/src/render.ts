// Canvas renderer. Everything is immediate-mode: each frame clears and
// redraws the revealed part of the scene from scratch, which is cheap at the
// document's node cap. The pure helpers (colors, widths, hit testing, legend)
// are kept separate from the drawing calls so they can be tested headless.

import type { Revealed } from "./playback.js";
import type { SceneNode, VisSpec } from "./visspec.js";

// Index 0 is the scholar's own domain (always blue); 10 is the shared
// fallback for overflow and unassigned domains.
export const PALETTE_COLORS: readonly string[] = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#bcbd22",
  "#17becf",
  "#7f4f24",
  "#999999",
];

export function colorFor(index: number): string {
  if (index < 0 || index >= PALETTE_COLORS.length) {
    return PALETTE_COLORS[PALETTE_COLORS.length - 1];
  }
  return PALETTE_COLORS[index];
}

/** Stroke width in scene units for a given citation multiplicity. Strictly
 * increasing so a weight-3 edge always reads thicker than a weight-1 edge. */
export function edgeWidth(weight: number): number {
  return 0.0012 + 0.0012 * Math.sqrt(Math.max(1, weight));
}

export interface LegendEntry {
  domain: string;
  fill: string;
}

/** Legend rows in palette order, one per palette entry. */
export function legendEntries(spec: VisSpec): LegendEntry[] {
  return spec.palette.map((entry) => ({
    domain: entry.domain,
    fill: colorFor(entry.color),
  }));
}

/** Hit test in canvas pixels. Returns a node index, "ego", or null. Nodes
 * are scanned back to front so the chronologically latest (topmost) wins. */
export function nodeAtPoint(
  spec: VisSpec,
  revealed: Revealed,
  px: number,
  py: number,
  size: number,
): number | "ego" | null {
  const slack = 2 / size;
  const x = px / size;
  const y = py / size;
  for (let i = spec.nodes.length - 1; i >= 0; i--) {
    if (!revealed.nodes.has(i)) continue;
    const node = spec.nodes[i];
    if (Math.hypot(node.x - x, node.y - y) <= node.radius + slack) return i;
  }
  if (Math.hypot(spec.ego.x - x, spec.ego.y - y) <= spec.ego.radius + slack) {
    return "ego";
  }
  return null;
}

function endpoint(spec: VisSpec, which: number | "ego"): { x: number; y: number } {
  if (which === "ego") return { x: spec.ego.x, y: spec.ego.y };
  const node: SceneNode = spec.nodes[which];
  return { x: node.x, y: node.y };
}

export interface DrawOptions {
  hover?: number | "ego" | null;
  edgeProgress?: Map<number, number>;
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  spec: VisSpec,
  revealed: Revealed,
  size: number,
  options: DrawOptions = {},
): void {
  ctx.clearRect(0, 0, size, size);
  const progress = options.edgeProgress;

  for (const index of revealed.edges) {
    const edge = spec.edges[index];
    if (!revealed.nodes.has(edge.source)) continue;
    const from = endpoint(spec, edge.source);
    const to = endpoint(spec, edge.target);
    const t = progress?.get(index) ?? 1;
    if (t <= 0) continue;
    ctx.beginPath();
    ctx.moveTo(from.x * size, from.y * size);
    // links grow linearly outward from the citing node
    ctx.lineTo(
      (from.x + (to.x - from.x) * t) * size,
      (from.y + (to.y - from.y) * t) * size,
    );
    ctx.strokeStyle = "rgba(90, 90, 90, 0.45)";
    ctx.lineWidth = Math.max(0.5, edgeWidth(edge.weight) * size);
    ctx.stroke();
  }

  for (const index of revealed.nodes) {
    const node = spec.nodes[index];
    ctx.beginPath();
    ctx.arc(node.x * size, node.y * size, node.radius * size, 0, Math.PI * 2);
    ctx.fillStyle = colorFor(node.color);
    ctx.fill();
    if (options.hover === index) {
      ctx.strokeStyle = "#222222";
      ctx.lineWidth = 2;
      ctx.stroke();
    }
  }

  ctx.beginPath();
  ctx.arc(spec.ego.x * size, spec.ego.y * size, spec.ego.radius * size, 0, Math.PI * 2);
  ctx.fillStyle = colorFor(spec.ego.color);
  ctx.fill();
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 2;
  ctx.stroke();
  if (options.hover === "ego") {
    ctx.strokeStyle = "#222222";
    ctx.stroke();
  }
}

/** Large gray year counter drawn behind the graph. */
export function drawYearCounter(
  ctx: CanvasRenderingContext2D,
  year: number | null,
  size: number,
): void {
  if (year === null) return;
  ctx.save();
  ctx.fillStyle = "rgba(0, 0, 0, 0.08)";
  ctx.font = `${Math.round(size / 5)}px system-ui, sans-serif`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(String(year), size / 2, size / 2);
  ctx.restore();
}
