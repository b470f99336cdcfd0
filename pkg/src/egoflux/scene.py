"""Compile an ego network into a renderer-independent visualization spec.

The compiler runs node selection under the display cap, spiral layout,
palette assignment, influence-based sizing, and the per-year animation
schedule, then emits a self-contained JSON document. Compilation is
deterministic: the same network and options always produce byte-identical
output (stable key order, floats fixed at 6 decimals).

Geometry lives in a unit viewport: the ego sits at (0.5, 0.5) and alters
wind outward on an Archimedean spiral ``r = b * theta`` with constant
arc-length spacing between consecutive (chronologically ordered) nodes,
so radial distance encodes recency. The number of windings grows with
``sqrt(n)``, which keeps the gap between adjacent windings proportional
to the arc spacing at every scale.
"""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass

from egoflux.corpus import UNASSIGNED_DOMAIN
from egoflux.egonet import AlterNode, EgoNetwork, Timelines, compute_shape_stats
from egoflux.errors import DataError, InvalidArgument

SCHEMA_VERSION = 1
NODE_CAP = 275  # display cap, ego node included

R_MIN = 0.006
R_MAX = 0.035
EGO_RADIUS = 0.05
SPIRAL_INNER_RADIUS = 0.08
OUTER_LIMIT = 0.45
TURNS_COEFF = 0.45  # windings = round(TURNS_COEFF * sqrt(n))

PALETTE_SLOTS = 10
FALLBACK_COLOR = 10
FALLBACK_LABEL = "other"

EGO_KEY = "ego"

DURATION_EMPTY = 0.3
# (max node count, segment duration); per-node time shrinks band over band.
DURATION_BANDS = ((4, 0.8), (14, 1.6), (29, 2.6))
DURATION_FULL = 4.0


@dataclass(frozen=True)
class SceneOptions:
    scholar_label: str = ""
    cap: int = NODE_CAP
    margin: float = 0.01
    linkout_template: str | None = None  # "{id}" placeholder
    corpus_hash: str = ""


@dataclass(frozen=True)
class SpiralLayout:
    positions: tuple[tuple[float, float], ...]
    arc_spacing: float
    turns: int
    coefficient: float  # b in r = b * theta
    inner_radius: float
    outer_radius: float


def segment_duration(node_count: int) -> float:
    if node_count == 0:
        return DURATION_EMPTY
    for upper, duration in DURATION_BANDS:
        if node_count <= upper:
            return duration
    return DURATION_FULL


def select_nodes(ego_network: EgoNetwork, cap: int = NODE_CAP) -> list[AlterNode]:
    """Pick the alters that survive the display cap, in chronological order.

    Only alters with a year on the animation axis are eligible. When the
    eligible set plus the ego exceeds the cap, the top ``cap - 1`` alters
    are kept, ranked by has-domain, then influence score, then earlier
    year, then id.
    """
    if cap < 1:
        raise InvalidArgument(f"cap must be >= 1, got {cap}")
    eligible = [
        node
        for node in ego_network.alters
        if node.year is not None
        and ego_network.first_year <= node.year <= ego_network.last_year
    ]
    budget = cap - 1
    if len(eligible) > budget:
        ranked = sorted(
            eligible,
            key=lambda n: (not n.has_domain, -n.eigenfactor, n.year, n.id),
        )
        eligible = ranked[:budget]
    eligible.sort(key=lambda n: (n.year, n.id))
    return eligible


def _arc_length(b: float, theta: float) -> float:
    # Arc length of r = b*theta from 0 to theta.
    root = math.sqrt(1.0 + theta * theta)
    return 0.5 * b * (theta * root + math.asinh(theta))


def _theta_at_arc(b: float, target: float, theta_guess: float) -> float:
    # Newton inversion of the arc-length function; derivative b*sqrt(1+t^2).
    theta = max(theta_guess, 1e-9)
    for _ in range(64):
        err = _arc_length(b, theta) - target
        step = err / (b * math.sqrt(1.0 + theta * theta))
        theta -= step
        if abs(step) < 1e-13:
            break
    return theta


def layout_spiral(nodes: list[AlterNode], margin: float = 0.01) -> SpiralLayout:
    """Place chronologically sorted nodes on an Archimedean spiral.

    The outermost node lands exactly at radius ``0.45 - margin``; radii
    are nondecreasing along the input order. A single node sits at the
    fixed inner radius.
    """
    if not (0.0 <= margin < OUTER_LIMIT - SPIRAL_INNER_RADIUS):
        raise InvalidArgument(f"margin {margin} out of range")
    n = len(nodes)
    outer = OUTER_LIMIT - margin
    if n == 0:
        return SpiralLayout((), 0.0, 0, 0.0, SPIRAL_INNER_RADIUS, outer)

    turns = max(1, round(TURNS_COEFF * math.sqrt(n)))
    b = (outer - SPIRAL_INNER_RADIUS) / (2.0 * math.pi * turns)
    theta_in = SPIRAL_INNER_RADIUS / b
    theta_out = outer / b

    if n == 1:
        x = 0.5 + SPIRAL_INNER_RADIUS * math.cos(theta_in)
        y = 0.5 + SPIRAL_INNER_RADIUS * math.sin(theta_in)
        return SpiralLayout(((x, y),), 0.0, turns, b, SPIRAL_INNER_RADIUS, outer)

    arc_in = _arc_length(b, theta_in)
    arc_out = _arc_length(b, theta_out)
    spacing = (arc_out - arc_in) / (n - 1)

    positions = []
    theta = theta_in
    for k in range(n):
        if k == 0:
            theta = theta_in
        elif k == n - 1:
            theta = theta_out
        else:
            theta = _theta_at_arc(b, arc_in + k * spacing, theta)
        r = b * theta
        positions.append((0.5 + r * math.cos(theta), 0.5 + r * math.sin(theta)))
    return SpiralLayout(
        tuple(positions), spacing, turns, b, SPIRAL_INNER_RADIUS, outer
    )


def assign_palette(
    ego_network: EgoNetwork, selected: list[AlterNode]
) -> tuple[list[tuple[str, int]], dict[str, int]]:
    """Color slots for domains plus a per-node color index.

    Slot 0 (blue) goes to the modal domain among the ego's own papers;
    remaining slots follow frequency among the selected alters. Domains
    past the 10 slots and "unassigned" share the fixed fallback slot.
    """
    ego_assigned = Counter(d for d in ego_network.ego_domains if d != UNASSIGNED_DOMAIN)
    if ego_assigned:
        blue = min(ego_assigned.items(), key=lambda kv: (-kv[1], kv[0]))[0]
    else:
        # Degenerate corpus: no ego paper carries a domain. Promote the
        # most frequent assigned alter domain so blue is still meaningful.
        alter_assigned = Counter(n.domain for n in selected if n.has_domain)
        blue = (
            min(alter_assigned.items(), key=lambda kv: (-kv[1], kv[0]))[0]
            if alter_assigned
            else None
        )

    slots: list[str] = [blue] if blue is not None else []
    freq = Counter(n.domain for n in selected if n.has_domain and n.domain != blue)
    for domain, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0])):
        if len(slots) >= PALETTE_SLOTS:
            break
        slots.append(domain)

    slot_index = {domain: i for i, domain in enumerate(slots)}
    colors: dict[str, int] = {}
    fallback_used = False
    for node in selected:
        idx = slot_index.get(node.domain)
        if idx is None:
            idx = FALLBACK_COLOR
            fallback_used = True
        colors[node.id] = idx

    palette = [(domain, i) for i, domain in enumerate(slots)]
    if fallback_used:
        palette.append((FALLBACK_LABEL, FALLBACK_COLOR))
    return palette, colors


def size_nodes(selected: list[AlterNode]) -> list[float]:
    """Radius per node: sqrt scaling keeps node area roughly proportional
    to the influence score, relative to the scene maximum."""
    ef_max = max((n.eigenfactor for n in selected), default=0.0)
    if ef_max <= 0.0:
        return [R_MIN] * len(selected)
    return [
        R_MIN + (R_MAX - R_MIN) * math.sqrt(n.eigenfactor / ef_max) for n in selected
    ]


def build_schedule(
    selected: list[AlterNode],
    edges: list[tuple[int, int | str, int]],
    first_year: int,
    last_year: int,
) -> list[dict]:
    """One segment per calendar year with node and link-fire offsets.

    A year's nodes are spaced evenly across its duration at
    ``duration * (k + 1) / (n + 1)``; each edge fires in its source
    node's segment at the source's appearance offset.
    """
    nodes_by_year: dict[int, list[int]] = defaultdict(list)
    for idx, node in enumerate(selected):
        nodes_by_year[node.year].append(idx)
    edges_by_source: dict[int, list[int]] = defaultdict(list)
    for edge_idx, (source, _, _) in enumerate(edges):
        edges_by_source[source].append(edge_idx)

    segments = []
    for year in range(first_year, last_year + 1):
        indices = nodes_by_year.get(year, [])
        duration = segment_duration(len(indices))
        appearances = []
        links = []
        for k, node_idx in enumerate(indices):
            offset = duration * (k + 1) / (len(indices) + 1)
            appearances.append({"node": node_idx, "offset": _round6(offset)})
            for edge_idx in edges_by_source.get(node_idx, []):
                links.append({"edge": edge_idx, "offset": _round6(offset)})
        segments.append(
            {
                "year": year,
                "duration": _round6(duration),
                "appearances": appearances,
                "links": links,
            }
        )
    return segments


def _round6(value: float) -> float:
    rounded = round(float(value), 6)
    return 0.0 if rounded == 0.0 else rounded  # normalize -0.0


def compile_visspec(
    ego_network: EgoNetwork,
    timelines: Timelines,
    options: SceneOptions | None = None,
) -> dict:
    """Run selection, layout, palette, sizing, and scheduling into one document.

    Timelines and shape statistics always describe the full ego network;
    the cap only limits what the graph portion displays.
    """
    if options is None:
        options = SceneOptions()
    selected = select_nodes(ego_network, options.cap)
    layout = layout_spiral(selected, options.margin)
    palette, colors = assign_palette(ego_network, selected)
    radii = size_nodes(selected)
    index_of = {node.id: idx for idx, node in enumerate(selected)}

    edges: list[tuple[int, int | str, int]] = []
    aa_by_source: dict[str, list[str]] = defaultdict(list)
    for citing, cited in ego_network.alter_alter_edges:
        aa_by_source[citing].append(cited)
    for idx, node in enumerate(selected):
        edges.append((idx, EGO_KEY, ego_network.alter_ego_edges[node.id]))
        targets = [
            index_of[cited] for cited in aa_by_source.get(node.id, []) if cited in index_of
        ]
        for target in sorted(targets):
            edges.append((idx, target, 1))

    schedule = build_schedule(
        selected, edges, ego_network.first_year, ego_network.last_year
    )
    stats = compute_shape_stats(ego_network)

    nodes_doc = []
    for idx, node in enumerate(selected):
        x, y = layout.positions[idx]
        doc = {
            "id": node.id,
            "year": node.year,
            "x": _round6(x),
            "y": _round6(y),
            "radius": _round6(radii[idx]),
            "color": colors[node.id],
            "title": node.title,
            "venue": node.venue,
            "authors": list(node.authors),
            "eigenfactor": _round6(node.eigenfactor),
        }
        if options.linkout_template is not None:
            doc["url"] = options.linkout_template.replace("{id}", node.id)
        nodes_doc.append(doc)

    return {
        "schema_version": SCHEMA_VERSION,
        "scholar": options.scholar_label,
        "corpus_hash": options.corpus_hash,
        "ego": {
            "x": 0.5,
            "y": 0.5,
            "radius": EGO_RADIUS,
            "color": 0,
            "paper_count": len(ego_network.ego_papers),
        },
        "nodes": nodes_doc,
        "edges": [
            {"source": source, "target": target, "weight": weight}
            for source, target, weight in edges
        ],
        "palette": [{"domain": domain, "color": color} for domain, color in palette],
        "schedule": schedule,
        "timelines": {
            "years": list(timelines.years),
            "publications": list(timelines.publications),
            "citations_received": list(timelines.citations_received),
            "ef_sum": [_round6(v) for v in timelines.ef_sum],
            "funding_phase": list(timelines.funding_phase),
        },
        "shape_stats": {
            "alter_count": stats.alter_count,
            "alter_alter_density": _round6(stats.alter_alter_density),
            "domain_entropy": _round6(stats.domain_entropy),
            "distinct_domains": stats.distinct_domains,
        },
        "diagnostics": {
            "total_alters": len(ego_network.alters),
            "selected_alters": len(selected),
            "alters_without_year": ego_network.alters_without_year,
        },
    }


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at exactly 6 decimals."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format(obj, ".6f"))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise InvalidArgument("document keys must be strings")
            if i:
                parts.append(",")
            parts.append(json.dumps(key))
            parts.append(":")
            _emit(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _emit(item, parts)
        parts.append("]")
    else:
        raise InvalidArgument(f"cannot serialize {type(obj).__name__}")


_REQUIRED_KEYS = (
    "schema_version",
    "scholar",
    "ego",
    "nodes",
    "edges",
    "palette",
    "schedule",
    "timelines",
    "shape_stats",
)


def parse_visspec(text: str) -> dict:
    """Parse and sanity-check a visualization spec document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"visspec is not valid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise DataError("visspec must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DataError(
            f"unsupported visspec schema_version {version!r}, expected {SCHEMA_VERSION}"
        )
    missing = [key for key in _REQUIRED_KEYS if key not in doc]
    if missing:
        raise DataError(f"visspec missing keys: {', '.join(missing)}")
    node_count = len(doc["nodes"])
    for edge in doc["edges"]:
        for end in (edge["source"], edge["target"]):
            if end == EGO_KEY:
                continue
            if not isinstance(end, int) or not (0 <= end < node_count):
                raise DataError(f"edge endpoint {end!r} is not a valid node index")
    return doc
