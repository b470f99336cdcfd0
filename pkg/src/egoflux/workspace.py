"""Data-directory layout and loading helpers shared by the CLI and server.

A workspace directory holds everything one corpus needs:

    papers.jsonl      canonical paper records, one JSON object per line
    citations.tsv     canonical edge list, citing<TAB>cited
    scores.efc        binary influence-score cache keyed by corpus hash
    collections.jsonl collection journal (created on first write)

`ingest` builds the first three; every other command loads from here.
"""

from __future__ import annotations

import os

from egoflux.corpus import Corpus, ingest, write_corpus
from egoflux.errors import DataError
from egoflux.influence import (
    InfluenceScores,
    SolverConfig,
    compute_eigenfactor,
    read_score_cache,
    write_score_cache,
)

PAPERS_FILE = "papers.jsonl"
CITATIONS_FILE = "citations.tsv"
SCORES_FILE = "scores.efc"
COLLECTIONS_FILE = "collections.jsonl"


def papers_path(data_dir: str) -> str:
    return os.path.join(data_dir, PAPERS_FILE)


def citations_path(data_dir: str) -> str:
    return os.path.join(data_dir, CITATIONS_FILE)


def scores_path(data_dir: str) -> str:
    return os.path.join(data_dir, SCORES_FILE)


def collections_path(data_dir: str) -> str:
    return os.path.join(data_dir, COLLECTIONS_FILE)


def init_workspace(
    source_papers: str,
    source_citations: str,
    mode: str,
    data_dir: str,
    config: SolverConfig | None = None,
) -> tuple[Corpus, InfluenceScores]:
    """Ingest source files, then write canonical copies and a score cache."""
    corpus = ingest(source_papers, source_citations, mode=mode)
    os.makedirs(data_dir, exist_ok=True)
    write_corpus(corpus, papers_path(data_dir), citations_path(data_dir))
    scores = compute_eigenfactor(corpus, config)
    write_score_cache(scores_path(data_dir), scores, corpus.content_hash)
    return corpus, scores


def load_corpus(data_dir: str) -> Corpus:
    papers = papers_path(data_dir)
    citations = citations_path(data_dir)
    if not os.path.exists(papers) or not os.path.exists(citations):
        raise DataError(
            f"no corpus found in {data_dir!r} (expected {PAPERS_FILE} and "
            f"{CITATIONS_FILE}; run ingest first)"
        )
    # Canonical files only contain resolvable edges, so strict mode is safe.
    return ingest(papers, citations, mode="strict")


def load_scores(
    data_dir: str,
    corpus: Corpus,
    config: SolverConfig | None = None,
    refresh: bool = False,
) -> InfluenceScores:
    """Return cached scores, recomputing when stale or explicitly asked.

    The cache is trusted only if its recorded corpus hash matches and,
    when a config is given, its alpha/tolerance match too.
    """
    path = scores_path(data_dir)
    if not refresh and os.path.exists(path):
        try:
            cached, cached_hash = read_score_cache(path)
        except DataError:
            cached = None
            cached_hash = ""
        if cached is not None and cached_hash == corpus.content_hash:
            if config is None or (
                cached.alpha == config.alpha and cached.tolerance == config.tolerance
            ):
                return cached
    scores = compute_eigenfactor(corpus, config)
    write_score_cache(path, scores, corpus.content_hash)
    return scores
