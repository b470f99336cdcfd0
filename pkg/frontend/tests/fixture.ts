// Shared fixtures. demo_visspec.json is a verbatim copy of the compiler's
// frozen demo-scholar output, so these tests exercise the viewer against the
// exact bytes the service produces.

import rawDemo from "./fixtures/demo_visspec.json";
import { parseVisSpec, type VisSpec } from "../src/visspec.js";

export function demoSpec(): VisSpec {
  // deep copy so tests can mutate freely
  return parseVisSpec(JSON.parse(JSON.stringify(rawDemo)));
}

/** Minimal two-year, three-node scene built by hand. */
export function tinySpec(): VisSpec {
  const node = (id: string, year: number, x: number) => ({
    id,
    year,
    x,
    y: 0.5,
    radius: 0.01,
    color: 0,
    title: `Title ${id}`,
    venue: "V",
    authors: ["A. One"],
    eigenfactor: 0.001234,
  });
  return parseVisSpec({
    schema_version: 1,
    scholar: "Tiny",
    corpus_hash: "0".repeat(64),
    ego: { x: 0.5, y: 0.5, radius: 0.05, color: 0, paper_count: 1 },
    nodes: [node("a", 2001, 0.58), node("b", 2002, 0.42), node("c", 2002, 0.6)],
    edges: [
      { source: 0, target: "ego", weight: 1 },
      { source: 1, target: "ego", weight: 3 },
      { source: 2, target: "ego", weight: 1 },
      { source: 2, target: 0, weight: 1 },
    ],
    palette: [{ domain: "d", color: 0 }],
    schedule: [
      {
        year: 2001,
        duration: 0.8,
        appearances: [{ node: 0, offset: 0.4 }],
        links: [{ edge: 0, offset: 0.4 }],
      },
      {
        year: 2002,
        duration: 0.8,
        appearances: [
          { node: 1, offset: 0.266667 },
          { node: 2, offset: 0.533333 },
        ],
        links: [
          { edge: 1, offset: 0.266667 },
          { edge: 2, offset: 0.533333 },
          { edge: 3, offset: 0.533333 },
        ],
      },
    ],
    timelines: {
      years: [2001, 2002],
      publications: [1, 0],
      citations_received: [1, 2],
      ef_sum: [0.01, 0.0],
      funding_phase: ["none", "none"],
    },
    shape_stats: {
      alter_count: 3,
      alter_alter_density: 0.16667,
      domain_entropy: 0,
      distinct_domains: 1,
    },
  });
}
