import { describe, expect, it } from "vitest";

import { PlaybackEngine, revealAt, totalDuration } from "../src/playback.js";
import type { VisSpec } from "../src/visspec.js";
import { demoSpec, tinySpec } from "./fixture.js";

const FRAME = 1 / 60;

/** What must be visible at the end of a year, computed from the node and
 * edge arrays alone, without touching the schedule. */
function expectedAtYear(spec: VisSpec, year: number) {
  const nodes = new Set<number>();
  spec.nodes.forEach((node, i) => {
    if (node.year <= year) nodes.add(i);
  });
  const edges = new Set<number>();
  spec.edges.forEach((edge, i) => {
    if (spec.nodes[edge.source].year <= year) edges.add(i);
  });
  return { nodes, edges };
}

describe("scrubbing", () => {
  it("reproduces exactly the nodes and edges with year <= target", () => {
    const spec = demoSpec();
    const engine = new PlaybackEngine(spec);
    for (const year of spec.timelines.years) {
      engine.scrubToYear(year);
      const expected = expectedAtYear(spec, year);
      expect(engine.revealed.nodes).toEqual(expected.nodes);
      expect(engine.revealed.edges).toEqual(expected.edges);
    }
  });

  it("is path-independent", () => {
    const spec = demoSpec();
    const years = spec.timelines.years;
    const target = years[Math.floor(years.length / 2)];

    const direct = new PlaybackEngine(spec);
    direct.scrubToYear(target);

    const wanderer = new PlaybackEngine(spec);
    wanderer.scrubToYear(years[years.length - 1]);
    wanderer.tick(0.123);
    wanderer.scrubToYear(years[0]);
    wanderer.scrubToYear(target);

    expect(wanderer.revealed.nodes).toEqual(direct.revealed.nodes);
    expect(wanderer.revealed.edges).toEqual(direct.revealed.edges);
    expect(wanderer.currentYear).toBe(direct.currentYear);
  });

  it("first year shows only that year's nodes", () => {
    const spec = demoSpec();
    const engine = new PlaybackEngine(spec);
    const first = spec.timelines.years[0];
    engine.scrubToYear(first);
    for (const i of engine.revealed.nodes) {
      expect(spec.nodes[i].year).toBe(first);
    }
  });

  it("last year reveals the whole document", () => {
    const spec = demoSpec();
    const engine = new PlaybackEngine(spec);
    engine.scrubToYear(spec.timelines.years[spec.timelines.years.length - 1]);
    expect(engine.revealed.nodes.size).toBe(spec.nodes.length);
    expect(engine.revealed.edges.size).toBe(spec.edges.length);
  });

  it("ignores years outside the axis", () => {
    const spec = demoSpec();
    const engine = new PlaybackEngine(spec);
    engine.scrubToYear(spec.timelines.years[3]);
    const before = engine.revealed;
    engine.scrubToYear(1800);
    engine.scrubToYear(2999);
    expect(engine.revealed).toBe(before);
    expect(engine.currentYear).toBe(spec.timelines.years[3]);
  });
});

describe("playback", () => {
  it("total duration equals the summed segment durations within one frame", () => {
    const spec = demoSpec();
    const expected = spec.schedule.reduce((sum, s) => sum + s.duration, 0);
    expect(totalDuration(spec)).toBeCloseTo(expected, 12);

    const engine = new PlaybackEngine(spec);
    engine.playing = true;
    let simulated = 0;
    let guard = 0;
    while (!engine.finished && guard < 100000) {
      engine.tick(FRAME);
      simulated += FRAME;
      guard += 1;
    }
    expect(engine.finished).toBe(true);
    expect(Math.abs(simulated - expected)).toBeLessThanOrEqual(FRAME + 1e-9);
    expect(engine.revealed.nodes.size).toBe(spec.nodes.length);
    expect(engine.revealed.edges.size).toBe(spec.edges.length);
  });

  it("a single large tick spills across segments correctly", () => {
    const spec = demoSpec();
    const jumped = new PlaybackEngine(spec);
    jumped.tick(totalDuration(spec) / 2);

    const stepped = new PlaybackEngine(spec);
    let remaining = totalDuration(spec) / 2;
    while (remaining > 1e-12) {
      const dt = Math.min(FRAME, remaining);
      stepped.tick(dt);
      remaining -= dt;
    }
    expect(Math.abs(jumped.elapsed - stepped.elapsed)).toBeLessThan(1e-9);
    expect(jumped.revealed.nodes).toEqual(stepped.revealed.nodes);
  });

  it("mid-segment reveal is exactly the offsets that have passed", () => {
    const spec = tinySpec();
    const engine = new PlaybackEngine(spec);
    engine.tick(0.8 + 0.3); // into 2002 at clock 0.3
    expect(engine.currentYear).toBe(2002);
    expect(engine.revealed.nodes).toEqual(new Set([0, 1])); // b at 0.2667, c at 0.5333 not yet
    engine.tick(0.3); // clock 0.6, past both offsets
    expect(engine.revealed.nodes).toEqual(new Set([0, 1, 2]));
    expect(engine.revealed.edges).toEqual(new Set([0, 1, 2, 3]));
  });

  it("revealAt is a pure prefix function", () => {
    const spec = tinySpec();
    expect(revealAt(spec, 0, 0).nodes.size).toBe(0);
    expect(revealAt(spec, 0, 0.4).nodes).toEqual(new Set([0]));
    expect(revealAt(spec, 1, 0).nodes).toEqual(new Set([0]));
    expect(revealAt(spec, 1, 0.7).nodes).toEqual(new Set([0, 1, 2]));
  });

  it("tiny fixture: three nodes, year counter ends at the last year", () => {
    const spec = tinySpec();
    expect(spec.nodes.length).toBe(3);
    const engine = new PlaybackEngine(spec);
    engine.tick(1000);
    expect(engine.finished).toBe(true);
    expect(engine.currentYear).toBe(2002);
    expect(engine.revealed.nodes.size).toBe(3);
  });

  it("link animation progress grows from 0 to 1 after the fire offset", () => {
    const spec = tinySpec();
    const engine = new PlaybackEngine(spec);
    engine.tick(0.4); // edge 0 fires exactly now
    expect(engine.edgeProgress().get(0)).toBe(0);
    engine.tick(0.2);
    const partial = engine.edgeProgress().get(0)!;
    expect(partial).toBeGreaterThan(0);
    expect(partial).toBeLessThan(1);
    engine.tick(10);
    expect(engine.edgeProgress().get(0)).toBe(1);
    for (const value of engine.edgeProgress().values()) {
      expect(value).toBeGreaterThanOrEqual(0);
      expect(value).toBeLessThanOrEqual(1);
    }
  });

  it("restart from the end replays to the same final state", () => {
    const spec = demoSpec();
    const engine = new PlaybackEngine(spec);
    engine.scrubToEnd();
    const atEnd = engine.revealed.nodes.size;
    engine.scrubToStart();
    expect(engine.revealed.nodes.size).toBe(0);
    engine.tick(totalDuration(spec) + 1);
    expect(engine.revealed.nodes.size).toBe(atEnd);
  });
});
