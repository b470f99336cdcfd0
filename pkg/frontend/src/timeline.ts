// Helpers for the linked timeline charts under the graph: funding phase
// bands, per-year bar data, and number formatting for the detail panel.

import type { Timelines } from "./visspec.js";

export interface Band {
  phase: string;
  startYear: number;
  endYear: number;
}

/** Collapse the per-year phase labels into contiguous colored regions. A
 * funded scholar yields exactly before/during/after; an unfunded one yields
 * a single "none" band. */
export function fundingBands(timelines: Timelines): Band[] {
  const bands: Band[] = [];
  const { years, funding_phase: phases } = timelines;
  for (let i = 0; i < years.length; i++) {
    const previous = bands[bands.length - 1];
    if (previous !== undefined && previous.phase === phases[i]) {
      previous.endYear = years[i];
    } else {
      bands.push({ phase: phases[i], startYear: years[i], endYear: years[i] });
    }
  }
  return bands;
}

export interface YearBar {
  year: number;
  publications: number;
  citations: number;
  efSum: number;
  phase: string;
}

export function yearBars(timelines: Timelines): YearBar[] {
  return timelines.years.map((year, i) => ({
    year,
    publications: timelines.publications[i],
    citations: timelines.citations_received[i],
    efSum: timelines.ef_sum[i],
    phase: timelines.funding_phase[i],
  }));
}

/** Influence scores shown at four significant figures. */
export function formatEigenfactor(value: number): string {
  if (value === 0) return "0.000";
  return value.toPrecision(4);
}

export const PHASE_FILLS: Record<string, string> = {
  before: "#f3e8d8",
  during: "#ffd9a8",
  after: "#e4dcf5",
  none: "#ececec",
};
