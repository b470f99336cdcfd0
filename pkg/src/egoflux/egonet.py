"""Egocentric citation networks and per-year indicator timelines.

The ego is the merged set of a scholar's curated papers; alters are the
corpus papers citing at least one ego paper. The network keeps every
alter->ego edge (weighted by the number of *distinct* ego papers the
alter cites) and every citation between two alters. Ego papers citing
other ego papers contribute nothing: the display has a single merged ego
node, so such edges would be invisible and would distort indicators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from egoflux.corpus import UNASSIGNED_DOMAIN, YEAR_MAX, YEAR_MIN, Corpus, shannon_entropy
from egoflux.errors import InvalidArgument
from egoflux.influence import InfluenceScores, yearly_ef_sum


@dataclass(frozen=True)
class AlterNode:
    id: str
    year: int | None
    title: str
    venue: str
    domain: str
    eigenfactor: float
    authors: tuple[str, ...]  # display names, listed order

    @property
    def has_domain(self) -> bool:
        return self.domain != UNASSIGNED_DOMAIN


@dataclass(frozen=True)
class EgoNetwork:
    ego_papers: frozenset[str]
    alters: tuple[AlterNode, ...]  # year ascending (unknown last), then id
    alter_ego_edges: dict[str, int]  # alter id -> distinct ego papers cited
    alter_alter_edges: tuple[tuple[str, str], ...]  # (citing, cited)
    first_year: int  # earliest dated ego paper
    last_year: int  # latest year present anywhere in the corpus
    alters_without_year: int
    ego_domains: tuple[str, ...] = ()  # one label per ego paper, sorted

    def alter(self, alter_id: str) -> AlterNode:
        for node in self.alters:
            if node.id == alter_id:
                return node
        raise KeyError(alter_id)


@dataclass(frozen=True)
class Timelines:
    """Aligned per-year series over [first_year, last_year]."""

    years: tuple[int, ...]
    publications: tuple[int, ...]
    citations_received: tuple[int, ...]
    ef_sum: tuple[float, ...]
    funding_phase: tuple[str, ...]  # before | during | after | none
    citations_undated: int = 0  # multiplicity held by alters without a year
    citations_outside_axis: int = 0  # multiplicity held by alters dated off-axis


@dataclass(frozen=True)
class ShapeStats:
    alter_count: int
    alter_alter_density: float  # connected unordered alter pairs / C(n, 2)
    domain_entropy: float  # natural-log Shannon entropy of alter domains
    distinct_domains: int


def _alter_sort_key(node: AlterNode) -> tuple[int, int, str]:
    if node.year is None:
        return (1, 0, node.id)
    return (0, node.year, node.id)


def build_ego_network(
    corpus: Corpus,
    scores: InfluenceScores,
    ego_paper_ids: list[str] | tuple[str, ...],
) -> EgoNetwork:
    """Collect alters, alter->ego multiplicities, and alter->alter edges.

    Deterministic: alters are ordered (year asc, unknown last, id asc)
    and alter->alter edges follow that ordering of their endpoints.
    """
    if not ego_paper_ids:
        raise InvalidArgument("ego paper set must be nonempty")
    ego = frozenset(ego_paper_ids)
    ego_papers = [corpus.paper(pid) for pid in sorted(ego)]

    dated_years = [p.year for p in ego_papers if p.year is not None]
    if not dated_years:
        raise InvalidArgument("no ego paper has a known publication year")
    first_year = min(dated_years)
    last_year = corpus.max_known_year()
    assert last_year is not None

    multiplicity: dict[str, int] = {}
    for pid in ego:
        for citing in corpus.in_cites[pid]:
            if citing not in ego:
                multiplicity[citing] = multiplicity.get(citing, 0) + 1

    alter_nodes = []
    for alter_id in multiplicity:
        paper = corpus.papers[alter_id]
        alter_nodes.append(
            AlterNode(
                id=paper.id,
                year=paper.year,
                title=paper.title,
                venue=paper.venue,
                domain=paper.domain,
                eigenfactor=scores.score(paper.id),
                authors=tuple(name for _, name in paper.authors),
            )
        )
    alter_nodes.sort(key=_alter_sort_key)

    order = {node.id: k for k, node in enumerate(alter_nodes)}
    alter_set = set(order)
    aa_edges = []
    for node in alter_nodes:
        for cited in corpus.out_refs[node.id]:
            if cited in alter_set and cited != node.id:
                aa_edges.append((node.id, cited))
    aa_edges.sort(key=lambda e: (order[e[0]], order[e[1]]))

    return EgoNetwork(
        ego_papers=ego,
        alters=tuple(alter_nodes),
        alter_ego_edges=multiplicity,
        alter_alter_edges=tuple(aa_edges),
        first_year=first_year,
        last_year=last_year,
        alters_without_year=sum(1 for n in alter_nodes if n.year is None),
        ego_domains=tuple(sorted(p.domain for p in ego_papers)),
    )


def _funding_phase(year: int, funding: tuple[int, int] | None) -> str:
    if funding is None:
        return "none"
    start, end = funding
    if year < start:
        return "before"
    if year > end:
        return "after"
    return "during"


def compute_timelines(
    ego_network: EgoNetwork,
    corpus: Corpus,
    scores: InfluenceScores,
    funding: tuple[int, int] | None = None,
) -> Timelines:
    """Publications, citations received, and influence sum per year.

    Citations are keyed by the *citing* paper's publication year (a
    citation "happens" when the citing paper appears in the animation).
    Alters without a year, or dated outside the axis, are tallied in the
    diagnostics counters instead of the series.
    """
    if funding is not None:
        start, end = funding
        if not (YEAR_MIN <= start <= YEAR_MAX and YEAR_MIN <= end <= YEAR_MAX):
            raise InvalidArgument(
                f"funding years must lie in [{YEAR_MIN}, {YEAR_MAX}]"
            )
        if start > end:
            raise InvalidArgument("funding start year must be <= end year")

    first, last = ego_network.first_year, ego_network.last_year
    years = tuple(range(first, last + 1))
    publications = {y: 0 for y in years}
    for pid in ego_network.ego_papers:
        year = corpus.papers[pid].year
        if year is not None:
            publications[year] += 1

    citations = {y: 0 for y in years}
    undated = 0
    outside = 0
    for node in ego_network.alters:
        mult = ego_network.alter_ego_edges[node.id]
        if node.year is None:
            undated += mult
        elif first <= node.year <= last:
            citations[node.year] += mult
        else:
            outside += mult

    ef_by_year = yearly_ef_sum(scores, sorted(ego_network.ego_papers), corpus)

    return Timelines(
        years=years,
        publications=tuple(publications[y] for y in years),
        citations_received=tuple(citations[y] for y in years),
        ef_sum=tuple(ef_by_year[y] for y in years),
        funding_phase=tuple(_funding_phase(y, funding) for y in years),
        citations_undated=undated,
        citations_outside_axis=outside,
    )


def compute_shape_stats(ego_network: EgoNetwork) -> ShapeStats:
    """Density and interdisciplinarity summary of the alter subgraph.

    Density is the fraction of unordered alter pairs connected in either
    direction, so a fully reciprocated digraph still reads 1.0.
    """
    n = len(ego_network.alters)
    if n < 2:
        density = 0.0
    else:
        connected_pairs = {frozenset(edge) for edge in ego_network.alter_alter_edges}
        density = len(connected_pairs) / math.comb(n, 2)

    domain_counts: dict[str, int] = {}
    for node in ego_network.alters:
        domain_counts[node.domain] = domain_counts.get(node.domain, 0) + 1

    return ShapeStats(
        alter_count=n,
        alter_alter_density=density,
        domain_entropy=shannon_entropy(domain_counts.values()),
        distinct_domains=len(domain_counts),
    )


def dump_edges(ego_network: EgoNetwork) -> str:
    """Plain edge-list dump for oracle comparison.

    One line per edge, ``citing<TAB>cited<TAB>multiplicity``; the merged
    ego node is written as the literal ``EGO`` and alter->alter edges
    carry multiplicity 1.
    """
    lines = []
    for node in ego_network.alters:
        lines.append(f"{node.id}\tEGO\t{ego_network.alter_ego_edges[node.id]}")
    for citing, cited in ego_network.alter_alter_edges:
        lines.append(f"{citing}\t{cited}\t1")
    return "\n".join(lines) + ("\n" if lines else "")
