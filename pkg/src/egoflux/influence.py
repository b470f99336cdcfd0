"""Article-level influence scores over the whole citation graph.

The score is the stationary citation flow of a damped random surfer who
follows references (citing -> cited). Let ``H`` be the column-normalized
link matrix (column ``i`` spreads ``1/outdeg(i)`` over the papers ``i``
cites; papers with no references leave their column empty). The surfer
distribution solves

    pi = alpha * (H pi + dangling_mass(pi) / N) + (1 - alpha) / N

by power iteration under the L1 norm, where dangling mass is spread
uniformly. The final score is the *citation-only* flow, renormalized:

    score = H pi / sum(H pi)

so teleport and dangling redistribution never leak into scores and a
paper cited by nobody scores exactly 0. On the degenerate corpus with no
citations at all the flow vanishes and scores fall back to uniform.

Score cache file layout (little-endian), round-trip tested:

    magic      4 bytes  b"EFSC"
    version    u16      1
    hash       64 bytes corpus content hash, ASCII hex
    alpha      f64
    tolerance  f64
    iterations u32
    residual   f64
    count      u64
    records    count * (id_len u16, id utf-8 bytes, score f64), id ascending
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from egoflux.corpus import Corpus
from egoflux.errors import ConvergenceError, DataError, InvalidArgument, NotFound

CACHE_MAGIC = b"EFSC"
CACHE_VERSION = 1


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = 0.85
    tolerance: float = 1e-12
    max_iterations: int = 1000

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InvalidArgument(f"alpha must be in (0, 1), got {self.alpha}")
        if self.tolerance <= 0:
            raise InvalidArgument(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise InvalidArgument("max_iterations must be >= 1")


@dataclass(frozen=True)
class InfluenceScores:
    """Per-paper scores summing to 1, plus solver diagnostics."""

    scores: dict[str, float]
    iterations_used: int
    residual: float
    alpha: float
    tolerance: float
    residual_history: tuple[float, ...] = field(default=(), repr=False)

    def score(self, paper_id: str) -> float:
        try:
            return self.scores[paper_id]
        except KeyError:
            raise NotFound(f"no influence score for paper {paper_id!r}") from None


def _link_matrix(corpus: Corpus) -> tuple[sparse.csr_matrix, np.ndarray, dict[str, int]]:
    ids = corpus.sorted_ids
    index = {pid: k for k, pid in enumerate(ids)}
    n = len(ids)
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    dangling = np.zeros(n, dtype=bool)
    for k, pid in enumerate(ids):
        refs = corpus.out_refs[pid]
        if not refs:
            dangling[k] = True
            continue
        w = 1.0 / len(refs)
        for cited in refs:
            rows.append(index[cited])
            cols.append(k)
            vals.append(w)
    h = sparse.csr_matrix(
        (np.asarray(vals), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(n, n),
    )
    return h, dangling, index


def compute_eigenfactor(corpus: Corpus, config: SolverConfig | None = None) -> InfluenceScores:
    """Power-iterate the surfer distribution and return normalized citation flow.

    Deterministic for a fixed config: papers enter the matrix in sorted-id
    order and the CSR matvec uses a fixed reduction order.
    """
    if config is None:
        config = SolverConfig()
    n = len(corpus)
    if n == 0:
        raise InvalidArgument("cannot score an empty corpus")

    h, dangling, _ = _link_matrix(corpus)
    pi = np.full(n, 1.0 / n)
    teleport = (1.0 - config.alpha) / n

    residuals: list[float] = []
    for iteration in range(1, config.max_iterations + 1):
        flow = h.dot(pi)
        dangling_mass = float(pi[dangling].sum())
        new_pi = config.alpha * (flow + dangling_mass / n) + teleport
        residual = float(np.abs(new_pi - pi).sum())
        residuals.append(residual)
        pi = new_pi
        if residual <= config.tolerance:
            break
    else:
        raise ConvergenceError(residuals[-1], config.max_iterations, config.tolerance)

    final_flow = h.dot(pi)
    total = float(final_flow.sum())
    if total > 0.0:
        values = final_flow / total
    else:
        # No citations anywhere: no flow to normalize, fall back to uniform.
        values = np.full(n, 1.0 / n)

    scores = {pid: float(values[k]) for k, pid in enumerate(corpus.sorted_ids)}
    return InfluenceScores(
        scores=scores,
        iterations_used=iteration,
        residual=residuals[-1],
        alpha=config.alpha,
        tolerance=config.tolerance,
        residual_history=tuple(residuals),
    )


def yearly_ef_sum(
    scores: InfluenceScores, ego_paper_ids: list[str] | tuple[str, ...], corpus: Corpus
) -> dict[int, float]:
    """Per-year sum of the ego papers' scores.

    The year axis runs from the earliest dated ego paper to the latest
    year present anywhere in the corpus; years without ego papers map
    to 0. Ego papers without a year are excluded.
    """
    papers = [corpus.paper(pid) for pid in ego_paper_ids]
    dated = [p for p in papers if p.year is not None]
    if not dated:
        raise InvalidArgument("no ego paper has a known publication year")
    first = min(p.year for p in dated)
    last = corpus.max_known_year()
    assert last is not None  # dated ego papers are corpus papers
    sums = {year: 0.0 for year in range(first, last + 1)}
    for p in dated:
        sums[p.year] += scores.score(p.id)
    return sums


def write_score_cache(path: str, scores: InfluenceScores, corpus_hash: str) -> None:
    """Serialize scores keyed by corpus content hash (layout in module docstring)."""
    hash_bytes = corpus_hash.encode("ascii")
    if len(hash_bytes) != 64:
        raise InvalidArgument("corpus hash must be 64 hex characters")
    items = sorted(scores.scores.items())
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<H", CACHE_VERSION))
        fh.write(hash_bytes)
        fh.write(
            struct.pack(
                "<ddId",
                scores.alpha,
                scores.tolerance,
                scores.iterations_used,
                scores.residual,
            )
        )
        fh.write(struct.pack("<Q", len(items)))
        for pid, value in items:
            encoded = pid.encode("utf-8")
            fh.write(struct.pack("<H", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<d", value))


def _read_exact(fh, n: int, path: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise DataError("score cache file is truncated", path)
    return data


def read_score_cache(path: str) -> tuple[InfluenceScores, str]:
    """Read a score cache file; returns (scores, corpus_hash)."""
    with open(path, "rb") as fh:
        magic = _read_exact(fh, 4, path)
        if magic != CACHE_MAGIC:
            raise DataError("not a score cache file (bad magic)", path)
        (version,) = struct.unpack("<H", _read_exact(fh, 2, path))
        if version != CACHE_VERSION:
            raise DataError(f"unsupported score cache version {version}", path)
        try:
            corpus_hash = _read_exact(fh, 64, path).decode("ascii")
        except UnicodeDecodeError:
            raise DataError("corpus hash field is not ASCII", path) from None
        alpha, tolerance, iterations, residual = struct.unpack(
            "<ddId", _read_exact(fh, 28, path)
        )
        (count,) = struct.unpack("<Q", _read_exact(fh, 8, path))
        score_map: dict[str, float] = {}
        for _ in range(count):
            (id_len,) = struct.unpack("<H", _read_exact(fh, 2, path))
            pid = _read_exact(fh, id_len, path).decode("utf-8")
            (value,) = struct.unpack("<d", _read_exact(fh, 8, path))
            score_map[pid] = value
        trailing = fh.read(1)
        if trailing:
            raise DataError("trailing bytes after score records", path)
    scores = InfluenceScores(
        scores=score_map,
        iterations_used=iterations,
        residual=residual,
        alpha=alpha,
        tolerance=tolerance,
    )
    return scores, corpus_hash
