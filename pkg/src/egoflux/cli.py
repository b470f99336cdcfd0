"""Command-line entry points.

Subcommands cover the whole pipeline: `ingest` builds a workspace from
raw files, `score` recomputes influence scores, `visspec` compiles a
scene document for a collection or an ad-hoc paper list, `serve` starts
the HTTP API, and `report` prints indicator tables as tab-separated
text. Exit codes: 0 success, 1 usage error, 2 data error, 3 solver
non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys

from egoflux import workspace
from egoflux.egonet import build_ego_network, compute_shape_stats, compute_timelines
from egoflux.errors import ConvergenceError, EgofluxError
from egoflux.influence import SolverConfig
from egoflux.scene import SceneOptions, canonical_json, compile_visspec
from egoflux.store import CollectionStore

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_CONVERGENCE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _funding_window(text: str) -> tuple[int, int]:
    try:
        start, end = text.split(":")
        return (int(start), int(end))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected Y1:Y2 (e.g. 1995:1998), got {text!r}"
        ) from None


def _add_data_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--data",
        default=os.environ.get("EGOFLUX_DATA"),
        help="workspace directory (default: $EGOFLUX_DATA)",
    )


def _require_data(args: argparse.Namespace) -> str:
    if not args.data:
        raise _UsageError("--data is required (or set EGOFLUX_DATA)")
    return args.data


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="egoflux", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="build a workspace from raw corpus files")
    p_ingest.add_argument("--papers", required=True, help="paper records, one JSON object per line")
    p_ingest.add_argument("--citations", required=True, help="edge list, citing<TAB>cited")
    p_ingest.add_argument("--mode", choices=("strict", "lenient"), default="strict")
    p_ingest.add_argument("--out", required=True, help="workspace directory to create")
    p_ingest.set_defaults(func=cmd_ingest)

    p_score = sub.add_parser("score", help="recompute influence scores")
    _add_data_flag(p_score)
    p_score.add_argument("--alpha", type=float, default=0.85)
    p_score.add_argument("--tolerance", type=float, default=1e-12)
    p_score.add_argument("--max-iters", type=int, default=1000)
    p_score.set_defaults(func=cmd_score)

    p_vis = sub.add_parser("visspec", help="compile a scene document")
    _add_data_flag(p_vis)
    target = p_vis.add_mutually_exclusive_group(required=True)
    target.add_argument("--collection", help="stored collection id")
    target.add_argument("--papers", help="comma-separated paper ids")
    p_vis.add_argument("--funding", type=_funding_window, default=None, metavar="Y1:Y2")
    p_vis.add_argument("--label", default=None, help="scholar label shown by the viewer")
    p_vis.add_argument("--linkout-template", default=None, help='node URL template with "{id}"')
    p_vis.add_argument("--out", required=True, help="output path for the document")
    p_vis.set_defaults(func=cmd_visspec)

    p_serve = sub.add_parser("serve", help="start the HTTP API")
    _add_data_flag(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--linkout-template", default=None, help='node URL template with "{id}"')
    p_serve.add_argument("--frontend", default=None, help="static directory to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    p_report = sub.add_parser("report", help="print shape stats and timelines as TSV")
    _add_data_flag(p_report)
    p_report.add_argument("--collection", required=True, help="stored collection id")
    p_report.set_defaults(func=cmd_report)

    return parser


def cmd_ingest(args: argparse.Namespace) -> int:
    corpus, scores = workspace.init_workspace(
        args.papers, args.citations, args.mode, args.out
    )
    for key, value in corpus.report.as_dict().items():
        print(f"{key}\t{value}")
    print(f"score_iterations\t{scores.iterations_used}")
    print(f"workspace\t{args.out}")
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    data_dir = _require_data(args)
    config = SolverConfig(
        alpha=args.alpha, tolerance=args.tolerance, max_iterations=args.max_iters
    )
    corpus = workspace.load_corpus(data_dir)
    scores = workspace.load_scores(data_dir, corpus, config=config, refresh=True)
    print(f"papers\t{len(corpus)}")
    print(f"iterations\t{scores.iterations_used}")
    print(f"residual\t{scores.residual:.3e}")
    return EXIT_OK


def _resolve_target(args: argparse.Namespace, data_dir: str):
    """Return (paper ids, label, funding) for the visspec target."""
    if args.collection is not None:
        store = CollectionStore(workspace.collections_path(data_dir))
        collection = store.get(args.collection)
        funding = args.funding if args.funding is not None else collection.funding
        label = args.label if args.label is not None else collection.label
        return collection.paper_ids, label, funding
    paper_ids = tuple(p for p in (s.strip() for s in args.papers.split(",")) if p)
    if not paper_ids:
        raise _UsageError("--papers needs at least one id")
    return paper_ids, args.label or "", args.funding


def cmd_visspec(args: argparse.Namespace) -> int:
    data_dir = _require_data(args)
    corpus = workspace.load_corpus(data_dir)
    scores = workspace.load_scores(data_dir, corpus)
    paper_ids, label, funding = _resolve_target(args, data_dir)
    network = build_ego_network(corpus, scores, paper_ids)
    timelines = compute_timelines(network, corpus, scores, funding=funding)
    options = SceneOptions(
        scholar_label=label,
        linkout_template=args.linkout_template,
        corpus_hash=corpus.content_hash,
    )
    document = canonical_json(compile_visspec(network, timelines, options))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(document)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from egoflux.api import build_state, create_app

    data_dir = _require_data(args)
    state = build_state(data_dir, linkout_template=args.linkout_template)
    app = create_app(state, frontend_dir=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    data_dir = _require_data(args)
    corpus = workspace.load_corpus(data_dir)
    scores = workspace.load_scores(data_dir, corpus)
    store = CollectionStore(workspace.collections_path(data_dir))
    collection = store.get(args.collection)
    network = build_ego_network(corpus, scores, collection.paper_ids)
    timelines = compute_timelines(network, corpus, scores, funding=collection.funding)
    stats = compute_shape_stats(network)

    print(f"alter_count\t{stats.alter_count}")
    print(f"alter_alter_density\t{stats.alter_alter_density:.6f}")
    print(f"domain_entropy\t{stats.domain_entropy:.6f}")
    print(f"distinct_domains\t{stats.distinct_domains}")
    print("year\tpublications\tcitations_received\tef_sum\tfunding_phase")
    for i, year in enumerate(timelines.years):
        print(
            f"{year}\t{timelines.publications[i]}\t{timelines.citations_received[i]}"
            f"\t{timelines.ef_sum[i]:.6f}\t{timelines.funding_phase[i]}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"egoflux: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"egoflux: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"egoflux: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (EgofluxError, OSError) as exc:
        print(f"egoflux: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
