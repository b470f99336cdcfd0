// Schedule replay. The engine only walks the server-provided schedule; the
// revealed node and edge sets are always derived from the current (segment,
// clock) pair, so scrubbing anywhere is just picking a new pair and the view
// can never depend on how the user got there.

import type { VisSpec } from "./visspec.js";

/** Seconds a link spends growing from its source after it fires. */
export const LINK_ANIMATION_SECONDS = 0.4;

export interface Revealed {
  nodes: Set<number>;
  edges: Set<number>;
}

export function totalDuration(spec: VisSpec): number {
  let sum = 0;
  for (const segment of spec.schedule) sum += segment.duration;
  return sum;
}

/** Node and edge indexes visible at a point in the schedule: everything from
 * earlier segments, plus the current segment's entries whose offset has
 * passed. */
export function revealAt(spec: VisSpec, segmentIndex: number, clock: number): Revealed {
  const nodes = new Set<number>();
  const edges = new Set<number>();
  const last = Math.min(segmentIndex, spec.schedule.length - 1);
  for (let i = 0; i <= last; i++) {
    const segment = spec.schedule[i];
    const limit = i < segmentIndex ? Infinity : clock;
    for (const app of segment.appearances) {
      if (app.offset <= limit) nodes.add(app.node);
    }
    for (const link of segment.links) {
      if (link.offset <= limit) edges.add(link.edge);
    }
  }
  return { nodes, edges };
}

export class PlaybackEngine {
  readonly spec: VisSpec;
  playing = false;
  private segmentIndex = 0;
  private clock = 0;
  private cache: { key: string; revealed: Revealed } | null = null;

  constructor(spec: VisSpec) {
    this.spec = spec;
  }

  get finished(): boolean {
    const n = this.spec.schedule.length;
    if (n === 0) return true;
    return (
      this.segmentIndex >= n - 1 &&
      this.clock >= this.spec.schedule[n - 1].duration
    );
  }

  /** Year shown by the counter behind the graph. */
  get currentYear(): number | null {
    const schedule = this.spec.schedule;
    if (schedule.length === 0) return null;
    const i = Math.min(this.segmentIndex, schedule.length - 1);
    return schedule[i].year;
  }

  get revealed(): Revealed {
    const key = `${this.segmentIndex}:${this.clock}`;
    if (this.cache === null || this.cache.key !== key) {
      this.cache = { key, revealed: revealAt(this.spec, this.segmentIndex, this.clock) };
    }
    return this.cache.revealed;
  }

  /** Seconds of playback elapsed, summed across completed segments. */
  get elapsed(): number {
    let sum = 0;
    for (let i = 0; i < this.segmentIndex; i++) {
      sum += this.spec.schedule[i].duration;
    }
    return sum + this.clock;
  }

  /** Advance the clock, spilling across segment boundaries as needed. */
  tick(dtSeconds: number): void {
    if (dtSeconds <= 0 || this.spec.schedule.length === 0) return;
    let remaining = dtSeconds;
    while (remaining > 0) {
      const segment = this.spec.schedule[this.segmentIndex];
      const room = segment.duration - this.clock;
      if (remaining < room) {
        this.clock += remaining;
        return;
      }
      remaining -= room;
      if (this.segmentIndex === this.spec.schedule.length - 1) {
        this.clock = segment.duration;
        this.playing = false;
        return;
      }
      this.segmentIndex += 1;
      this.clock = 0;
    }
  }

  /** Jump to the end of the given year's segment. Years outside the axis are
   * ignored, matching the timeline's click behavior. */
  scrubToYear(year: number): void {
    const index = this.spec.schedule.findIndex((s) => s.year === year);
    if (index < 0) return;
    this.segmentIndex = index;
    this.clock = this.spec.schedule[index].duration;
  }

  scrubToStart(): void {
    this.segmentIndex = 0;
    this.clock = 0;
  }

  scrubToEnd(): void {
    const n = this.spec.schedule.length;
    if (n === 0) return;
    this.segmentIndex = n - 1;
    this.clock = this.spec.schedule[n - 1].duration;
  }

  /** Per-edge growth progress in [0, 1] for link animation: 1 for links that
   * fired in earlier segments, fractional for links still growing. */
  edgeProgress(): Map<number, number> {
    const progress = new Map<number, number>();
    const last = Math.min(this.segmentIndex, this.spec.schedule.length - 1);
    for (let i = 0; i <= last; i++) {
      const segment = this.spec.schedule[i];
      for (const link of segment.links) {
        if (i < this.segmentIndex) {
          progress.set(link.edge, 1);
        } else if (link.offset <= this.clock) {
          const age = this.clock - link.offset;
          progress.set(link.edge, Math.min(1, age / LINK_ANIMATION_SECONDS));
        }
      }
    }
    return progress;
  }
}
