"""HTTP API serving author search, collection curation, and compiled scenes.

The server holds one immutable corpus with its influence scores, plus a
durable collection store. Scene documents are compiled on demand and
cached by (collection id, version); any edit bumps the version, so stale
cache entries simply stop being addressed. All error bodies share the
shape {"code": ..., "message": ...}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from egoflux import workspace
from egoflux.corpus import Corpus
from egoflux.egonet import build_ego_network, compute_timelines
from egoflux.errors import (
    ConflictError,
    EmptyCollectionError,
    InvalidArgument,
    NotFound,
)
from egoflux.influence import InfluenceScores
from egoflux.scene import SceneOptions, canonical_json, compile_visspec
from egoflux.store import Collection, CollectionStore


@dataclass
class ServerState:
    corpus: Corpus
    scores: InfluenceScores
    store: CollectionStore
    linkout_template: str | None = None
    cache: dict[tuple[str, int], bytes] = field(default_factory=dict)
    cache_lock: threading.Lock = field(default_factory=threading.Lock)


def build_state(data_dir: str, linkout_template: str | None = None) -> ServerState:
    corpus = workspace.load_corpus(data_dir)
    scores = workspace.load_scores(data_dir, corpus)
    store = CollectionStore(workspace.collections_path(data_dir))
    return ServerState(corpus, scores, store, linkout_template)


class CreateCollectionBody(BaseModel):
    label: str
    paper_ids: list[str] = []
    funding: tuple[int, int] | None = None


class AddPapersBody(BaseModel):
    paper_ids: list[str]
    version: int


class FundingBody(BaseModel):
    start_year: int | None
    end_year: int | None
    version: int


def _collection_json(collection: Collection) -> dict:
    return collection.as_dict()


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _compile_collection(state: ServerState, collection: Collection) -> bytes:
    key = (collection.id, collection.version)
    with state.cache_lock:
        cached = state.cache.get(key)
    if cached is not None:
        return cached
    if not collection.paper_ids:
        raise EmptyCollectionError(
            f"collection {collection.id!r} has no papers to compile"
        )
    network = build_ego_network(state.corpus, state.scores, collection.paper_ids)
    timelines = compute_timelines(
        network, state.corpus, state.scores, funding=collection.funding
    )
    options = SceneOptions(
        scholar_label=collection.label,
        linkout_template=state.linkout_template,
        corpus_hash=state.corpus.content_hash,
    )
    document = canonical_json(compile_visspec(network, timelines, options))
    data = document.encode("utf-8")
    with state.cache_lock:
        state.cache[key] = data
    return data


def _check_papers_exist(state: ServerState, paper_ids) -> None:
    for pid in paper_ids:
        state.corpus.paper(pid)  # raises NotFound on the first unknown id


def create_app(state: ServerState, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="egoflux", docs_url=None, redoc_url=None)

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(EmptyCollectionError)
    async def _empty(request: Request, exc: EmptyCollectionError):
        return _error_response(422, "empty_collection", str(exc))

    @app.exception_handler(InvalidArgument)
    async def _invalid(request: Request, exc: InvalidArgument):
        return _error_response(400, "invalid_argument", str(exc))

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError):
        return _error_response(409, "conflict", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        return _error_response(400, "bad_request", str(exc))

    @app.get("/api/authors")
    def search_authors(q: str = ""):
        hits = state.corpus.find_authors(q)
        return [
            {"author_id": h.author_id, "name": h.name, "paper_count": h.paper_count}
            for h in hits
        ]

    @app.get("/api/authors/{author_id}/papers")
    def author_papers(author_id: str):
        paper_ids = state.corpus.papers_of(author_id)
        out = []
        for pid in paper_ids:
            paper = state.corpus.paper(pid)
            out.append(
                {
                    "id": paper.id,
                    "title": paper.title,
                    "year": paper.year,
                    "venue": paper.venue,
                    "domain": paper.domain,
                }
            )
        return out

    @app.post("/api/collections", status_code=201)
    def create_collection(body: CreateCollectionBody):
        _check_papers_exist(state, body.paper_ids)
        collection = state.store.create(
            label=body.label, paper_ids=body.paper_ids, funding=body.funding
        )
        return _collection_json(collection)

    @app.get("/api/collections/{collection_id}")
    def get_collection(collection_id: str):
        return _collection_json(state.store.get(collection_id))

    @app.post("/api/collections/{collection_id}/papers")
    def add_papers(collection_id: str, body: AddPapersBody):
        _check_papers_exist(state, body.paper_ids)
        collection = state.store.add_papers(
            collection_id, body.version, body.paper_ids
        )
        return _collection_json(collection)

    @app.delete("/api/collections/{collection_id}/papers/{paper_id}")
    def remove_paper(collection_id: str, paper_id: str, version: int):
        collection = state.store.remove_paper(collection_id, version, paper_id)
        return _collection_json(collection)

    @app.put("/api/collections/{collection_id}/funding")
    def set_funding(collection_id: str, body: FundingBody):
        if (body.start_year is None) != (body.end_year is None):
            raise InvalidArgument(
                "funding start_year and end_year must be given together"
            )
        funding = (
            None
            if body.start_year is None
            else (body.start_year, body.end_year)
        )
        collection = state.store.set_funding(collection_id, body.version, funding)
        return _collection_json(collection)

    @app.get("/api/collections/{collection_id}/visspec")
    def collection_visspec(collection_id: str):
        collection = state.store.get(collection_id)
        data = _compile_collection(state, collection)
        return Response(content=data, media_type="application/json")

    @app.get("/api/papers/{paper_id}")
    def paper_detail(paper_id: str):
        paper = state.corpus.paper(paper_id)
        detail = {
            "id": paper.id,
            "title": paper.title,
            "year": paper.year,
            "venue": paper.venue,
            "domain": paper.domain,
            "authors": [name for _, name in paper.authors],
            "eigenfactor": state.scores.score(paper.id),
        }
        if state.linkout_template is not None:
            detail["url"] = state.linkout_template.replace("{id}", paper.id)
        return detail

    if frontend_dir is not None:
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
