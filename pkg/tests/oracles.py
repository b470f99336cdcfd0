"""Independent reference implementations used to check the real code.

Everything here is deliberately written the slow, obvious way, from the
raw paper/edge data rather than through the package's data structures:
dense linear algebra instead of sparse iteration, exhaustive scans
instead of indexes, direct tabulation instead of shared helpers.
"""

from __future__ import annotations

import math

import numpy as np


def dense_eigenfactor(ids, edges, alpha=0.85):
    """Direct stationary-vector solve on a dense matrix, then one
    citation-flow multiplication and a normalization."""
    n = len(ids)
    index = {pid: i for i, pid in enumerate(ids)}
    counts = np.zeros((n, n))
    for citing, cited in edges:
        counts[index[cited], index[citing]] = 1.0
    out_deg = counts.sum(axis=0)
    h = np.zeros((n, n))
    nonzero = out_deg > 0
    h[:, nonzero] = counts[:, nonzero] / out_deg[nonzero]
    m = h.copy()
    m[:, ~nonzero] = 1.0 / n

    pi = np.linalg.solve(np.eye(n) - alpha * m, np.full(n, (1.0 - alpha) / n))
    flow = h @ pi
    total = flow.sum()
    if total <= 0.0:
        return {pid: 1.0 / n for pid in ids}
    return {pid: float(flow[index[pid]] / total) for pid in ids}


def brute_force_egonet(edges, ego_ids):
    """Exhaustive scan of the full edge list around an ego set.

    Returns (alters, multiplicity, alter_alter_edges) as plain sets/dicts.
    """
    ego = set(ego_ids)
    alters = {citing for citing, cited in edges if cited in ego and citing not in ego}
    multiplicity = {}
    for alter in alters:
        multiplicity[alter] = len(
            {cited for citing, cited in edges if citing == alter and cited in ego}
        )
    alter_alter = {
        (citing, cited)
        for citing, cited in edges
        if citing in alters and cited in alters and citing != cited
    }
    return alters, multiplicity, alter_alter


def tabulate_timelines(papers, edges, ego_ids, scores):
    """Recompute the three indicator series by direct counting.

    Returns (years, publications, citations_received, ef_sum) with the
    axis running from the first dated ego year to the last year in the
    corpus.
    """
    years_of = {p["id"]: p.get("year") for p in papers}
    ego = set(ego_ids)
    ego_years = [years_of[e] for e in ego if years_of[e] is not None]
    first = min(ego_years)
    last = max(y for y in years_of.values() if y is not None)
    axis = list(range(first, last + 1))

    _, multiplicity, _ = brute_force_egonet(edges, ego_ids)
    pubs = [sum(1 for e in ego if years_of[e] == y) for y in axis]
    cites = [
        sum(
            mult
            for alter, mult in multiplicity.items()
            if years_of[alter] == y
        )
        for y in axis
    ]
    ef = [sum(scores[e] for e in ego if years_of[e] == y) for y in axis]
    return axis, pubs, cites, ef


def min_pairwise_distance(positions):
    """Exhaustive O(n^2) scan over all position pairs."""
    best = math.inf
    for i in range(len(positions)):
        xi, yi = positions[i]
        for j in range(i + 1, len(positions)):
            xj, yj = positions[j]
            best = min(best, math.hypot(xi - xj, yi - yj))
    return best


def segment_duration_reference(n_nodes):
    """Threshold table restated independently of the implementation."""
    if n_nodes == 0:
        return 0.3
    if n_nodes <= 4:
        return 0.8
    if n_nodes <= 14:
        return 1.6
    if n_nodes <= 29:
        return 2.6
    return 4.0


def recompute_schedule(node_years, first_year, last_year):
    """Durations and appearance offsets recomputed from scratch.

    node_years is the chronologically sorted list of selected node years;
    returns {year: (duration, [offsets])}.
    """
    out = {}
    for year in range(first_year, last_year + 1):
        count = sum(1 for y in node_years if y == year)
        duration = segment_duration_reference(count)
        offsets = [duration * k / (count + 1) for k in range(1, count + 1)]
        out[year] = (duration, offsets)
    return out
