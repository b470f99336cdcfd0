"""egoflux: per-scholar citation influence visualizations.

Pipeline: ingest a paper/citation corpus, score every paper with an
article-level influence metric, build the egocentric citation network
around a curated paper collection, and compile a deterministic
visualization spec (spiral layout, animation schedule, palette,
indicator timelines) for the web viewer.
"""

from egoflux.corpus import Corpus, IngestReport, Paper, ingest
from egoflux.egonet import (
    AlterNode,
    EgoNetwork,
    ShapeStats,
    Timelines,
    build_ego_network,
    compute_shape_stats,
    compute_timelines,
)
from egoflux.errors import (
    ConflictError,
    ConvergenceError,
    DataError,
    EgofluxError,
    EmptyCollectionError,
    InvalidArgument,
    NotFound,
)
from egoflux.influence import (
    InfluenceScores,
    SolverConfig,
    compute_eigenfactor,
    yearly_ef_sum,
)
from egoflux.scene import SceneOptions, canonical_json, compile_visspec, parse_visspec

__version__ = "0.1.0"

__all__ = [
    "AlterNode",
    "ConflictError",
    "ConvergenceError",
    "Corpus",
    "DataError",
    "EgoNetwork",
    "EgofluxError",
    "EmptyCollectionError",
    "InfluenceScores",
    "IngestReport",
    "InvalidArgument",
    "NotFound",
    "Paper",
    "SceneOptions",
    "ShapeStats",
    "SolverConfig",
    "Timelines",
    "build_ego_network",
    "canonical_json",
    "compile_visspec",
    "compute_eigenfactor",
    "compute_shape_stats",
    "compute_timelines",
    "ingest",
    "parse_visspec",
    "yearly_ef_sum",
]
