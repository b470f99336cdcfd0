"""Corpus loading and indexing.

The corpus is two flat files:

* papers file: UTF-8, one JSON object per line with fields
  ``id``, ``title``, ``year``, ``venue``, ``domain``,
  ``authors`` (list of ``{"id": ..., "name": ...}``).
  ``year`` may be null/absent (stored as unknown); ``domain`` may be
  null/absent (stored as the distinct label ``"unassigned"``).
* citations file: UTF-8, tab-separated ``citing<TAB>cited``, one edge
  per line; ``#``-prefixed lines and blank lines are ignored.

After ingestion the corpus is immutable and safe for concurrent readers.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from egoflux.errors import DataError, InvalidArgument, NotFound

UNASSIGNED_DOMAIN = "unassigned"
YEAR_MIN = 1500
YEAR_MAX = 2100

_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)
_WS_RE = re.compile(r"\s+")


def normalize_name(name: str) -> str:
    """Casefold, strip punctuation, and collapse internal whitespace."""
    folded = unicodedata.normalize("NFKC", name).casefold()
    folded = _PUNCT_RE.sub(" ", folded)
    return _WS_RE.sub(" ", folded).strip()


@dataclass(frozen=True)
class Paper:
    id: str
    title: str
    year: int | None
    venue: str
    domain: str
    authors: tuple[tuple[str, str], ...]  # (author_id, name), in listed order

    @property
    def has_domain(self) -> bool:
        return self.domain != UNASSIGNED_DOMAIN


@dataclass(frozen=True)
class IngestReport:
    papers: int
    edges_retained: int
    dangling_dropped: int
    self_citations_dropped: int
    duplicate_edges_dropped: int
    papers_missing_year: int
    papers_missing_domain: int

    def as_dict(self) -> dict:
        return {
            "papers": self.papers,
            "edges_retained": self.edges_retained,
            "dangling_dropped": self.dangling_dropped,
            "self_citations_dropped": self.self_citations_dropped,
            "duplicate_edges_dropped": self.duplicate_edges_dropped,
            "papers_missing_year": self.papers_missing_year,
            "papers_missing_domain": self.papers_missing_domain,
        }


@dataclass(frozen=True)
class AuthorHit:
    author_id: str
    name: str
    paper_count: int


@dataclass
class Corpus:
    """Immutable paper/citation store with forward and backward indices.

    ``out_refs`` and ``in_cites`` are exact transposes of each other and
    hold each retained edge exactly once (self-citations and duplicate
    edge lines never survive ingestion). All index lists are sorted, so
    two ingestions of equivalent files produce structurally equal
    corpora regardless of input line order.
    """

    papers: dict[str, Paper]
    out_refs: dict[str, tuple[str, ...]]
    in_cites: dict[str, tuple[str, ...]]
    author_index: dict[str, tuple[str, ...]]  # author_id -> paper ids, (year, id) order
    name_index: dict[str, tuple[str, ...]]  # normalized name -> author ids
    author_names: dict[str, str]  # author_id -> display name
    content_hash: str
    report: IngestReport
    sorted_ids: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.sorted_ids:
            self.sorted_ids = tuple(sorted(self.papers))

    def __len__(self) -> int:
        return len(self.papers)

    def paper(self, paper_id: str) -> Paper:
        try:
            return self.papers[paper_id]
        except KeyError:
            raise NotFound(f"unknown paper id {paper_id!r}") from None

    def edge_count(self) -> int:
        return sum(len(v) for v in self.out_refs.values())

    def max_known_year(self) -> int | None:
        """Latest publication year present anywhere in the corpus."""
        years = [p.year for p in self.papers.values() if p.year is not None]
        return max(years) if years else None

    def find_authors(self, query: str) -> list[AuthorHit]:
        """Case-insensitive substring search over normalized author names.

        Results are sorted by paper count descending, then author id, so
        the same scholar split across several ids shows up as several
        rows for manual disambiguation.
        """
        needle = normalize_name(query)
        if not needle:
            raise InvalidArgument("author query must be nonempty")
        hit_ids: set[str] = set()
        for norm_name, author_ids in self.name_index.items():
            if needle in norm_name:
                hit_ids.update(author_ids)
        hits = [
            AuthorHit(aid, self.author_names[aid], len(self.author_index[aid]))
            for aid in hit_ids
        ]
        hits.sort(key=lambda h: (-h.paper_count, h.author_id))
        return hits

    def papers_of(self, author_id: str) -> list[str]:
        """All papers listing the author, year ascending (unknown last), then id."""
        try:
            return list(self.author_index[author_id])
        except KeyError:
            raise NotFound(f"unknown author id {author_id!r}") from None


def _parse_paper_line(raw: str, path: str, lineno: int) -> Paper:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON ({exc.msg})", path, lineno) from None
    if not isinstance(obj, dict):
        raise DataError("paper record must be a JSON object", path, lineno)

    pid = obj.get("id")
    if not isinstance(pid, str) or not pid:
        raise DataError("paper id must be a nonempty string", path, lineno)

    year = obj.get("year")
    if year is not None:
        if isinstance(year, bool) or not isinstance(year, int):
            raise DataError(f"year must be an integer or null, got {year!r}", path, lineno)
        if not (YEAR_MIN <= year <= YEAR_MAX):
            raise DataError(
                f"year {year} outside [{YEAR_MIN}, {YEAR_MAX}]", path, lineno
            )

    domain = obj.get("domain")
    if domain is None or domain == "":
        domain = UNASSIGNED_DOMAIN
    elif not isinstance(domain, str):
        raise DataError("domain must be a string or null", path, lineno)

    authors_raw = obj.get("authors", [])
    if not isinstance(authors_raw, list):
        raise DataError("authors must be a list", path, lineno)
    authors = []
    for entry in authors_raw:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("id"), str)
            or not entry["id"]
            or not isinstance(entry.get("name"), str)
        ):
            raise DataError("author entries must be {id, name} objects", path, lineno)
        authors.append((entry["id"], entry["name"]))

    title = obj.get("title")
    venue = obj.get("venue")
    title = "" if title is None else title
    venue = "" if venue is None else venue
    if not isinstance(title, str) or not isinstance(venue, str):
        raise DataError("title and venue must be strings", path, lineno)

    return Paper(
        id=pid,
        title=title,
        year=year,
        venue=venue,
        domain=domain,
        authors=tuple(authors),
    )


def _year_sort_key(paper: Paper) -> tuple[int, int, str]:
    # Unknown years sort after all known years.
    if paper.year is None:
        return (1, 0, paper.id)
    return (0, paper.year, paper.id)


def ingest(papers_path: str, citations_path: str, mode: str = "lenient") -> Corpus:
    """Load and index a corpus from flat files.

    ``mode`` controls dangling-edge policy: ``"strict"`` fails on the
    first edge whose endpoint is not a known paper; ``"lenient"`` drops
    such edges and reports the count. Self-citations and duplicate edge
    lines are dropped (and counted) in both modes.
    """
    if mode not in ("strict", "lenient"):
        raise InvalidArgument(f"mode must be 'strict' or 'lenient', got {mode!r}")

    papers: dict[str, Paper] = {}
    with open(papers_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            paper = _parse_paper_line(raw, papers_path, lineno)
            if paper.id in papers:
                raise DataError(f"duplicate paper id {paper.id!r}", papers_path, lineno)
            papers[paper.id] = paper

    out_sets: dict[str, set[str]] = {pid: set() for pid in papers}
    dangling = 0
    self_cites = 0
    duplicates = 0
    with open(citations_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise DataError(
                    "citation line must be 'citing<TAB>cited'", citations_path, lineno
                )
            citing, cited = parts
            if citing == cited:
                self_cites += 1
                continue
            refs = out_sets.get(citing)
            if refs is None or cited not in papers:
                if mode == "strict":
                    missing = citing if refs is None else cited
                    raise DataError(
                        f"edge references unknown paper {missing!r}",
                        citations_path,
                        lineno,
                    )
                dangling += 1
                continue
            if cited in refs:
                duplicates += 1
                continue
            refs.add(cited)

    out_refs: dict[str, tuple[str, ...]] = {}
    in_lists: dict[str, list[str]] = {pid: [] for pid in papers}
    for pid in papers:
        cited_sorted = tuple(sorted(out_sets[pid]))
        out_refs[pid] = cited_sorted
        for cited in cited_sorted:
            in_lists[cited].append(pid)
    in_cites = {pid: tuple(sorted(cs)) for pid, cs in in_lists.items()}

    author_papers: dict[str, list[str]] = {}
    author_name_counts: dict[str, Counter] = {}
    for paper in papers.values():
        for aid, name in paper.authors:
            author_papers.setdefault(aid, []).append(paper.id)
            author_name_counts.setdefault(aid, Counter())[name] += 1

    author_index: dict[str, tuple[str, ...]] = {}
    for aid, pids in author_papers.items():
        unique = sorted(set(pids), key=lambda pid: _year_sort_key(papers[pid]))
        author_index[aid] = tuple(unique)

    author_names: dict[str, str] = {}
    name_lists: dict[str, set[str]] = {}
    for aid, counts in author_name_counts.items():
        # Most frequent raw spelling wins; lexicographic tie-break.
        display = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        author_names[aid] = display
        for raw_name in counts:
            norm = normalize_name(raw_name)
            if norm:
                name_lists.setdefault(norm, set()).add(aid)
    name_index = {norm: tuple(sorted(aids)) for norm, aids in name_lists.items()}

    missing_year = sum(1 for p in papers.values() if p.year is None)
    missing_domain = sum(1 for p in papers.values() if not p.has_domain)
    report = IngestReport(
        papers=len(papers),
        edges_retained=sum(len(v) for v in out_refs.values()),
        dangling_dropped=dangling,
        self_citations_dropped=self_cites,
        duplicate_edges_dropped=duplicates,
        papers_missing_year=missing_year,
        papers_missing_domain=missing_domain,
    )

    sorted_ids = tuple(sorted(papers))
    content_hash = _hash_content(papers, out_refs, sorted_ids)

    return Corpus(
        papers=papers,
        out_refs=out_refs,
        in_cites=in_cites,
        author_index=author_index,
        name_index=name_index,
        author_names=author_names,
        content_hash=content_hash,
        report=report,
        sorted_ids=sorted_ids,
    )


def _hash_content(
    papers: dict[str, Paper],
    out_refs: dict[str, tuple[str, ...]],
    sorted_ids: Iterable[str],
) -> str:
    """SHA-256 over the canonical (sorted) corpus content.

    Input line order never changes the hash; retained edges and parsed
    paper records do.
    """
    h = hashlib.sha256()
    for pid in sorted_ids:
        h.update(paper_record_json(papers[pid]).encode("utf-8"))
        h.update(b"\n")
        for cited in out_refs[pid]:
            h.update(pid.encode("utf-8"))
            h.update(b"\t")
            h.update(cited.encode("utf-8"))
            h.update(b"\n")
    return h.hexdigest()


def paper_record_json(paper: Paper) -> str:
    """Canonical one-line JSON form of a paper record."""
    return json.dumps(
        {
            "id": paper.id,
            "title": paper.title,
            "year": paper.year,
            "venue": paper.venue,
            "domain": paper.domain,
            "authors": [{"id": aid, "name": name} for aid, name in paper.authors],
        },
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )


def write_corpus(corpus: Corpus, papers_path: str, citations_path: str) -> None:
    """Write the corpus back out in canonical (sorted) flat-file form."""
    with open(papers_path, "w", encoding="utf-8") as fh:
        for pid in corpus.sorted_ids:
            fh.write(paper_record_json(corpus.papers[pid]))
            fh.write("\n")
    with open(citations_path, "w", encoding="utf-8") as fh:
        for pid in corpus.sorted_ids:
            for cited in corpus.out_refs[pid]:
                fh.write(f"{pid}\t{cited}\n")


def shannon_entropy(counts: Iterable[int]) -> float:
    """Natural-log Shannon entropy of a count distribution."""
    counts = list(counts)
    total = sum(counts)
    if total <= 0:
        return 0.0
    ent = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            ent -= p * math.log(p)
    return ent
