// Thin typed client for the curation service. Scene fetches use latest-wins
// cancellation: while the user edits quickly, only the newest recompile ever
// reaches the renderer.

import { parseVisSpec, type VisSpec } from "./visspec.js";

export interface AuthorHit {
  author_id: string;
  name: string;
  paper_count: number;
}

export interface PaperRow {
  id: string;
  title: string;
  year: number | null;
  venue: string;
  domain: string | null;
}

export interface PaperDetail extends PaperRow {
  authors: string[];
  eigenfactor: number;
  url?: string;
}

export interface CollectionView {
  id: string;
  label: string;
  paper_ids: string[];
  funding: [number, number] | null;
  version: number;
  created: string;
  modified: string;
}

export class HttpError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "HttpError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private specGeneration = 0;
  private specAbort: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let code = "error";
      let message = `${response.status}`;
      try {
        const body = (await response.json()) as { code?: string; message?: string };
        if (body.code) code = body.code;
        if (body.message) message = body.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new HttpError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  private jsonInit(method: string, body: unknown): RequestInit {
    return {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  searchAuthors(q: string): Promise<AuthorHit[]> {
    return this.request(`/api/authors?q=${encodeURIComponent(q)}`);
  }

  authorPapers(authorId: string): Promise<PaperRow[]> {
    return this.request(`/api/authors/${encodeURIComponent(authorId)}/papers`);
  }

  paperDetail(paperId: string): Promise<PaperDetail> {
    return this.request(`/api/papers/${encodeURIComponent(paperId)}`);
  }

  createCollection(
    label: string,
    paperIds: string[],
    funding: [number, number] | null = null,
  ): Promise<CollectionView> {
    return this.request(
      "/api/collections",
      this.jsonInit("POST", { label, paper_ids: paperIds, funding }),
    );
  }

  getCollection(id: string): Promise<CollectionView> {
    return this.request(`/api/collections/${encodeURIComponent(id)}`);
  }

  addPapers(id: string, paperIds: string[], version: number): Promise<CollectionView> {
    return this.request(
      `/api/collections/${encodeURIComponent(id)}/papers`,
      this.jsonInit("POST", { paper_ids: paperIds, version }),
    );
  }

  removePaper(id: string, paperId: string, version: number): Promise<CollectionView> {
    return this.request(
      `/api/collections/${encodeURIComponent(id)}/papers/` +
        `${encodeURIComponent(paperId)}?version=${version}`,
      { method: "DELETE" },
    );
  }

  setFunding(
    id: string,
    window: [number, number] | null,
    version: number,
  ): Promise<CollectionView> {
    return this.request(
      `/api/collections/${encodeURIComponent(id)}/funding`,
      this.jsonInit("PUT", {
        start_year: window ? window[0] : null,
        end_year: window ? window[1] : null,
        version,
      }),
    );
  }

  /**
   * Fetch and validate the compiled scene for a collection. If another
   * fetchVisSpec call starts before this one settles, this one resolves to
   * null and its network request is aborted.
   */
  async fetchVisSpec(collectionId: string): Promise<VisSpec | null> {
    const generation = ++this.specGeneration;
    this.specAbort?.abort();
    const controller = new AbortController();
    this.specAbort = controller;
    let raw: unknown;
    try {
      raw = await this.request<unknown>(
        `/api/collections/${encodeURIComponent(collectionId)}/visspec`,
        { signal: controller.signal },
      );
    } catch (err) {
      if (generation !== this.specGeneration) return null; // superseded
      throw err;
    }
    if (generation !== this.specGeneration) return null;
    return parseVisSpec(raw);
  }
}
