// Page wiring: curation panel on the left, animated scene in the middle,
// linked timeline below. All state transitions go through PlaybackEngine and
// ApiClient; this file only moves values between the DOM and those two.

import { ApiClient, HttpError, type CollectionView, type PaperRow } from "./api.js";
import { PlaybackEngine } from "./playback.js";
import {
  drawScene,
  drawYearCounter,
  legendEntries,
  nodeAtPoint,
} from "./render.js";
import { formatEigenfactor, fundingBands, PHASE_FILLS, yearBars } from "./timeline.js";
import { SchemaError, type VisSpec } from "./visspec.js";

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const searchInput = el<HTMLInputElement>("author-search");
const searchResults = el<HTMLElement>("search-results");
const paperList = el<HTMLElement>("paper-list");
const collectionLabel = el<HTMLInputElement>("collection-label");
const fundingStart = el<HTMLInputElement>("funding-start");
const fundingEnd = el<HTMLInputElement>("funding-end");
const applyFunding = el<HTMLButtonElement>("apply-funding");
const compileButton = el<HTMLButtonElement>("compile");
const playButton = el<HTMLButtonElement>("play");
const restartButton = el<HTMLButtonElement>("restart");
const statusLine = el<HTMLElement>("status");
const errorPanel = el<HTMLElement>("error-panel");
const detailPanel = el<HTMLElement>("detail-panel");
const legendBox = el<HTMLElement>("legend");
const sceneCanvas = el<HTMLCanvasElement>("scene");
const timelineCanvas = el<HTMLCanvasElement>("timeline");

const reducedMotion = window.matchMedia("(prefers-reduced-motion: reduce)").matches;

let collection: CollectionView | null = null;
let candidatePapers: PaperRow[] = [];
let engine: PlaybackEngine | null = null;
let hover: number | "ego" | null = null;
let lastFrame = 0;

function setStatus(text: string): void {
  statusLine.textContent = text;
}

function showError(err: unknown): void {
  if (err instanceof SchemaError) {
    errorPanel.hidden = false;
    errorPanel.textContent =
      `${err.message}. Got version ${err.gotVersion ?? "unknown"}, ` +
      `supported version ${err.supportedVersion}. Update the viewer or the service.`;
    return;
  }
  if (err instanceof HttpError && err.status === 409) {
    setStatus("Someone else edited this collection. Reloading it.");
    if (collection) void reloadCollection(collection.id);
    return;
  }
  setStatus(err instanceof Error ? err.message : String(err));
}

async function reloadCollection(id: string): Promise<void> {
  collection = await api.getCollection(id);
  renderPaperList();
  await recompile();
}

function renderSearchResults(hits: { author_id: string; name: string; paper_count: number }[]): void {
  searchResults.replaceChildren();
  for (const hit of hits) {
    const row = document.createElement("button");
    row.type = "button";
    row.className = "result";
    row.textContent = `${hit.name} (${hit.paper_count} papers)`;
    row.addEventListener("click", () => void pickAuthor(hit.author_id, hit.name));
    searchResults.append(row);
  }
}

async function pickAuthor(authorId: string, name: string): Promise<void> {
  candidatePapers = await api.authorPapers(authorId);
  if (!collectionLabel.value) collectionLabel.value = name;
  renderPaperList();
}

function renderPaperList(): void {
  paperList.replaceChildren();
  const inCollection = new Set(collection?.paper_ids ?? []);
  for (const paper of candidatePapers) {
    const row = document.createElement("label");
    row.className = "paper-row";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = inCollection.has(paper.id);
    box.addEventListener("change", () => void togglePaper(paper.id, box.checked));
    const text = document.createElement("span");
    text.textContent = `${paper.year ?? "?"} ${paper.title}`;
    row.append(box, text);
    paperList.append(row);
  }
  compileButton.disabled = (collection?.paper_ids.length ?? 0) === 0;
}

async function togglePaper(paperId: string, include: boolean): Promise<void> {
  try {
    if (collection === null) {
      if (!include) return;
      collection = await api.createCollection(
        collectionLabel.value || "Untitled scholar",
        [paperId],
      );
    } else if (include) {
      collection = await api.addPapers(collection.id, [paperId], collection.version);
    } else {
      collection = await api.removePaper(collection.id, paperId, collection.version);
    }
    renderPaperList();
    await recompile();
  } catch (err) {
    showError(err);
  }
}

async function recompile(): Promise<void> {
  if (collection === null || collection.paper_ids.length === 0) {
    compileButton.disabled = true;
    return;
  }
  setStatus("Compiling…");
  try {
    const spec = await api.fetchVisSpec(collection.id);
    if (spec === null) return; // superseded by a newer edit
    installSpec(spec);
    setStatus(`${spec.nodes.length} citing papers`);
  } catch (err) {
    showError(err);
  }
}

function installSpec(spec: VisSpec): void {
  errorPanel.hidden = true;
  engine = new PlaybackEngine(spec);
  renderLegend(spec);
  if (reducedMotion) {
    engine.scrubToEnd();
  } else {
    engine.playing = true;
  }
  drawTimeline();
}

function renderLegend(spec: VisSpec): void {
  legendBox.replaceChildren();
  for (const entry of legendEntries(spec)) {
    const row = document.createElement("div");
    row.className = "legend-row";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = entry.fill;
    const label = document.createElement("span");
    label.textContent = entry.domain;
    row.append(swatch, label);
    legendBox.append(row);
  }
}

function renderDetails(index: number | "ego" | null): void {
  if (engine === null || index === null) {
    detailPanel.hidden = true;
    return;
  }
  detailPanel.hidden = false;
  if (index === "ego") {
    detailPanel.textContent =
      `${engine.spec.scholar}: ${engine.spec.ego.paper_count} collected papers`;
    return;
  }
  const node = engine.spec.nodes[index];
  detailPanel.replaceChildren();
  const title = document.createElement("strong");
  title.textContent = node.title;
  const meta = document.createElement("div");
  meta.textContent = `${node.venue} (${node.year}), ${node.authors.join(", ")}`;
  const score = document.createElement("div");
  score.textContent = `influence ${formatEigenfactor(node.eigenfactor)}`;
  detailPanel.append(title, meta, score);
  if (!node.url) {
    const note = document.createElement("div");
    note.className = "muted";
    note.textContent = "no link available";
    detailPanel.append(note);
  }
}

function drawTimeline(): void {
  if (engine === null) return;
  const spec = engine.spec;
  const ctx = timelineCanvas.getContext("2d");
  if (!ctx) return;
  const w = timelineCanvas.width;
  const h = timelineCanvas.height;
  const years = spec.timelines.years;
  const cell = w / years.length;
  ctx.clearRect(0, 0, w, h);

  for (const band of fundingBands(spec.timelines)) {
    const x0 = years.indexOf(band.startYear) * cell;
    const x1 = (years.indexOf(band.endYear) + 1) * cell;
    ctx.fillStyle = PHASE_FILLS[band.phase] ?? PHASE_FILLS["none"];
    ctx.fillRect(x0, 0, x1 - x0, h);
  }

  const bars = yearBars(spec.timelines);
  const peak = Math.max(1, ...bars.map((b) => b.citations));
  const current = engine.currentYear;
  bars.forEach((bar, i) => {
    const past = current !== null && bar.year < current;
    const active = bar.year === current;
    if (past || active) {
      ctx.fillStyle = active ? "rgba(255, 140, 0, 0.45)" : "rgba(255, 140, 0, 0.15)";
      ctx.fillRect(i * cell, 0, cell, h);
    }
    const barHeight = (bar.citations / peak) * (h - 18);
    ctx.fillStyle = "#5577aa";
    ctx.fillRect(i * cell + cell * 0.25, h - 14 - barHeight, cell * 0.5, barHeight);
    if (i % 2 === 0) {
      ctx.fillStyle = "#333333";
      ctx.font = "10px system-ui, sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(String(bar.year), i * cell + cell / 2, h - 3);
    }
  });
}

function frame(now: number): void {
  requestAnimationFrame(frame);
  if (engine === null) return;
  const dt = lastFrame === 0 ? 0 : (now - lastFrame) / 1000;
  lastFrame = now;
  if (engine.playing) engine.tick(Math.min(dt, 0.25));
  const ctx = sceneCanvas.getContext("2d");
  if (!ctx) return;
  const size = sceneCanvas.width;
  ctx.clearRect(0, 0, size, size);
  drawYearCounter(ctx, engine.currentYear, size);
  drawScene(ctx, engine.spec, engine.revealed, size, {
    hover,
    edgeProgress: engine.edgeProgress(),
  });
  playButton.textContent = engine.playing ? "Pause" : "Play";
  drawTimeline();
}

searchInput.addEventListener("keydown", (event) => {
  if (event.key !== "Enter") return;
  api
    .searchAuthors(searchInput.value)
    .then(renderSearchResults)
    .catch(showError);
});

applyFunding.addEventListener("click", () => {
  if (collection === null) return;
  const start = fundingStart.valueAsNumber;
  const end = fundingEnd.valueAsNumber;
  const window: [number, number] | null =
    Number.isFinite(start) && Number.isFinite(end) ? [start, end] : null;
  api
    .setFunding(collection.id, window, collection.version)
    .then((updated) => {
      collection = updated;
      return recompile();
    })
    .catch(showError);
});

compileButton.addEventListener("click", () => void recompile());

playButton.addEventListener("click", () => {
  if (engine === null) return;
  if (engine.finished) engine.scrubToStart();
  engine.playing = !engine.playing;
});

restartButton.addEventListener("click", () => {
  engine?.scrubToStart();
  if (engine && !reducedMotion) engine.playing = true;
});

sceneCanvas.addEventListener("mousemove", (event) => {
  if (engine === null) return;
  const rect = sceneCanvas.getBoundingClientRect();
  const scale = sceneCanvas.width / rect.width;
  hover = nodeAtPoint(
    engine.spec,
    engine.revealed,
    (event.clientX - rect.left) * scale,
    (event.clientY - rect.top) * scale,
    sceneCanvas.width,
  );
  sceneCanvas.style.cursor =
    typeof hover === "number" && engine.spec.nodes[hover].url ? "pointer" : "default";
  renderDetails(hover);
});

sceneCanvas.addEventListener("click", () => {
  if (engine === null || typeof hover !== "number") return;
  const url = engine.spec.nodes[hover].url;
  if (url) window.open(url, "_blank", "noopener");
});

timelineCanvas.addEventListener("click", (event) => {
  if (engine === null) return;
  const rect = timelineCanvas.getBoundingClientRect();
  const years = engine.spec.timelines.years;
  const i = Math.floor(((event.clientX - rect.left) / rect.width) * years.length);
  if (i < 0 || i >= years.length) return; // clicks outside the axis are ignored
  engine.playing = false;
  engine.scrubToYear(years[i]);
});

requestAnimationFrame(frame);
setStatus("Search for an author to begin.");
