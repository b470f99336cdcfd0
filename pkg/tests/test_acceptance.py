"""End-to-end acceptance checks for the full pipeline.

Each test covers one headline guarantee and prints a single PASS line
with the measured numbers (visible under `pytest -s` or in failure
output), so a run of this file doubles as a conformance report.
"""

import math
import os
import random
import shutil
import threading
import time

import pytest
from fastapi.testclient import TestClient

import oracles
import synth
from conftest import DEMO_CITATIONS, DEMO_EGO_IDS, DEMO_FUNDING, DEMO_LABEL, DEMO_PAPERS, GOLDEN_VISSPEC
from egoflux import corpus as corpus_mod
from egoflux import workspace
from egoflux.api import build_state, create_app
from egoflux.egonet import build_ego_network, compute_timelines
from egoflux.influence import SolverConfig, compute_eigenfactor
from egoflux.scene import (
    NODE_CAP,
    OUTER_LIMIT,
    SceneOptions,
    canonical_json,
    compile_visspec,
    layout_spiral,
    parse_visspec,
    segment_duration,
    select_nodes,
)


def report(name, detail):
    print(f"[PASS] {name}: {detail}")


def corpus_from(dirpath, papers, edges):
    papers_path, citations_path = synth.write_files(dirpath, papers, edges)
    return corpus_mod.ingest(papers_path, citations_path, mode="strict")


def alter_stub(pid, year, domain, ef):
    from egoflux.egonet import AlterNode

    return AlterNode(
        id=pid, year=year, title=f"T {pid}", venue="V", domain=domain,
        eigenfactor=ef, authors=(),
    )


def test_node_cap(tmp_path):
    papers = [synth.paper("ego0", year=1990, domain="home")]
    papers += [
        synth.paper(f"c{i:03d}", year=1991 + (i % 20), domain="d" + str(i % 5))
        for i in range(500)
    ]
    edges = [(f"c{i:03d}", "ego0") for i in range(500)]
    corpus = corpus_from(str(tmp_path), papers, edges)
    scores = compute_eigenfactor(corpus)
    network = build_ego_network(corpus, scores, ["ego0"])
    timelines = compute_timelines(network, corpus, scores)

    start = time.perf_counter()
    doc = compile_visspec(network, timelines, SceneOptions(scholar_label="Synthetic"))
    text = canonical_json(doc)
    elapsed = time.perf_counter() - start

    total_nodes = len(doc["nodes"]) + 1  # alters plus the ego disc
    assert len(network.alters) == 500
    assert total_nodes == NODE_CAP == 275
    assert elapsed < 1.0
    assert parse_visspec(text)["diagnostics"]["selected_alters"] == 274
    report("node cap", f"500 citers -> {total_nodes} nodes in {elapsed:.3f}s")


def test_schedule_constants():
    nodes = (
        [alter_stub(f"a{i:02d}", 1991, "d", 0.01) for i in range(2)]
        + [alter_stub(f"b{i:02d}", 1992, "d", 0.01) for i in range(30)]
    )
    nodes.sort(key=lambda n: (n.year, n.id))
    from egoflux.scene import build_schedule

    segments = {s["year"]: s for s in build_schedule(nodes, [], 1990, 1992)}
    durations = (
        segments[1990]["duration"],
        segments[1991]["duration"],
        segments[1992]["duration"],
    )
    assert durations == (0.3, 0.8, 4.0)

    band_lows = [1, 5, 15, 30]
    seconds_per_node = [segment_duration(n) / n for n in band_lows]
    assert all(a > b for a, b in zip(seconds_per_node, seconds_per_node[1:]))
    report(
        "schedule constants",
        f"0/2/30 nodes -> {durations}; per-node seconds at band edges "
        + ", ".join(f"{v:.3f}" for v in seconds_per_node),
    )


def test_eigenfactor_three_cycle(tmp_path):
    papers = [synth.paper(p, year=2000, domain="d") for p in ("a", "b", "c")]
    edges = [("a", "b"), ("b", "c"), ("c", "a")]
    corpus = corpus_from(str(tmp_path), papers, edges)
    scores = compute_eigenfactor(corpus)
    worst = max(abs(scores.scores[p] - 1.0 / 3.0) for p in ("a", "b", "c"))
    assert worst <= 1e-9
    report("eigenfactor 3-cycle", f"max deviation from 1/3 = {worst:.2e}")


def test_eigenfactor_matches_dense_oracle(tmp_path):
    rng = random.Random(20_260_822)
    worst_l1 = 0.0
    worst_sum = 0.0
    for trial in range(100):
        n = rng.randint(2, 120) if trial < 80 else rng.randint(200, 500)
        papers, edges, _ = synth.random_corpus(
            seed=1000 + trial, n_papers=n, max_refs=6
        )
        sub = tmp_path / f"g{trial}"
        sub.mkdir()
        corpus = corpus_from(str(sub), papers, edges)
        scores = compute_eigenfactor(corpus)

        kept_edges = [
            (citing, cited)
            for citing, refs in corpus.out_refs.items()
            for cited in refs
        ]
        expected = oracles.dense_eigenfactor(corpus.sorted_ids, kept_edges)
        l1 = sum(
            abs(scores.scores[pid] - expected[pid]) for pid in corpus.sorted_ids
        )
        total = sum(scores.scores.values())
        worst_l1 = max(worst_l1, l1)
        worst_sum = max(worst_sum, abs(total - 1.0))
        assert l1 <= 1e-8, f"trial {trial} (n={n}): L1 {l1:.3e}"
        assert abs(total - 1.0) <= 1e-9
    report(
        "eigenfactor vs dense oracle",
        f"100 graphs <=500 nodes, worst L1 {worst_l1:.2e}, "
        f"worst |sum-1| {worst_sum:.2e}",
    )


def test_egonet_matches_brute_force(tmp_path):
    start = time.perf_counter()
    for trial in range(200):
        papers, edges, _, ego = synth.random_scholar(seed=trial, n_papers=50)
        sub = tmp_path / f"s{trial}"
        sub.mkdir()
        corpus = corpus_from(str(sub), papers, edges)
        scores = compute_eigenfactor(corpus)
        network = build_ego_network(corpus, scores, ego)

        kept_edges = [
            (citing, cited)
            for citing, refs in corpus.out_refs.items()
            for cited in refs
        ]
        alters, multiplicity, alter_alter = oracles.brute_force_egonet(
            kept_edges, ego
        )
        assert {a.id for a in network.alters} == alters
        assert dict(network.alter_ego_edges) == multiplicity
        assert set(network.alter_alter_edges) == alter_alter
        assert len(network.alter_alter_edges) == len(alter_alter)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report("egonet vs brute force", f"200 corpora exact in {elapsed:.2f}s")


def test_timeline_conservation(tmp_path):
    checked = 0
    for trial in range(40):
        papers, edges, _, ego = synth.random_scholar(seed=5000 + trial, n_papers=55)
        years_of = {p["id"]: p["year"] for p in papers}
        if all(years_of[e] is None for e in ego):
            continue
        sub = tmp_path / f"t{trial}"
        sub.mkdir()
        corpus = corpus_from(str(sub), papers, edges)
        scores = compute_eigenfactor(corpus)
        network = build_ego_network(corpus, scores, ego)
        timelines = compute_timelines(network, corpus, scores)

        total_mult = sum(network.alter_ego_edges.values())
        assert (
            sum(timelines.citations_received)
            + timelines.citations_undated
            + timelines.citations_outside_axis
            == total_mult
        )
        dated_ego = sum(1 for e in ego if years_of[e] is not None)
        assert sum(timelines.publications) == dated_ego
        checked += 1

    # fully dated fixture: the raw identity holds with no remainder terms
    papers = [synth.paper(f"p{i}", year=1990 + i % 8, domain="d") for i in range(40)]
    edges = [(f"p{i}", f"p{i % 3}") for i in range(3, 40)]
    sub = tmp_path / "dated"
    sub.mkdir()
    corpus = corpus_from(str(sub), papers, edges)
    scores = compute_eigenfactor(corpus)
    network = build_ego_network(corpus, scores, ["p0", "p1", "p2"])
    timelines = compute_timelines(network, corpus, scores)
    assert timelines.citations_undated == 0
    assert timelines.citations_outside_axis == 0
    assert sum(timelines.citations_received) == sum(network.alter_ego_edges.values())
    assert sum(timelines.publications) == 3
    report("timeline conservation", f"{checked} random fixtures + 1 fully dated, exact")


def test_spiral_properties():
    nodes = [
        alter_stub(f"n{i:03d}", 1990 + i // 14, "d", 0.001) for i in range(275)
    ]
    layout = layout_spiral(nodes)
    radii = [math.hypot(x - 0.5, y - 0.5) for x, y in layout.positions]
    assert all(b >= a - 1e-12 for a, b in zip(radii, radii[1:]))
    assert max(radii) <= OUTER_LIMIT + 1e-12
    min_dist = oracles.min_pairwise_distance(layout.positions)
    assert min_dist >= 0.9 * layout.arc_spacing
    report(
        "spiral properties",
        f"n=275 radii nondecreasing, max {max(radii):.4f} <= 0.45, "
        f"min pairwise {min_dist:.5f} >= 0.9*{layout.arc_spacing:.5f}",
    )


def test_selection_dominance():
    from egoflux.egonet import EgoNetwork

    rng = random.Random(424242)
    trials = 30
    for _ in range(trials):
        alters = [
            alter_stub(
                f"n{i:03d}",
                rng.randint(1990, 2012),
                rng.choice(["a", "b", corpus_mod.UNASSIGNED_DOMAIN]),
                rng.choice([0.0, rng.random() * 0.01]),
            )
            for i in range(rng.randint(280, 420))
        ]
        ordered = tuple(sorted(alters, key=lambda a: (a.year, a.id)))
        network = EgoNetwork(
            ego_papers=frozenset({"E"}),
            alters=ordered,
            alter_ego_edges={a.id: 1 for a in alters},
            alter_alter_edges=(),
            first_year=1990,
            last_year=2012,
            alters_without_year=0,
            ego_domains=("a",),
        )
        kept = {a.id for a in select_nodes(network)}
        kept_keys = [(a.has_domain, a.eigenfactor) for a in alters if a.id in kept]
        dropped_keys = [
            (a.has_domain, a.eigenfactor) for a in alters if a.id not in kept
        ]
        assert max(dropped_keys) <= min(kept_keys)
    report("selection dominance", f"{trials} randomized trials, no inversion")


def test_determinism_and_golden(tmp_path):
    ws = str(tmp_path / "ws")
    corpus, scores = workspace.init_workspace(
        DEMO_PAPERS, DEMO_CITATIONS, "strict", ws
    )
    network = build_ego_network(corpus, scores, DEMO_EGO_IDS)
    timelines = compute_timelines(network, corpus, scores, funding=DEMO_FUNDING)
    options = SceneOptions(
        scholar_label=DEMO_LABEL, corpus_hash=corpus.content_hash
    )
    first = canonical_json(compile_visspec(network, timelines, options))
    second = canonical_json(compile_visspec(network, timelines, options))
    assert first == second

    assert canonical_json(parse_visspec(first)) == first

    with open(GOLDEN_VISSPEC, encoding="utf-8") as fh:
        golden = fh.read()
    assert first == golden
    report(
        "determinism & round-trip",
        f"double compile identical, parse/serialize identity, "
        f"golden regenerated ({len(golden)} bytes)",
    )


def test_service_integration(tmp_path, demo_ws):
    ws = str(tmp_path / "svc")
    os.mkdir(ws)
    for name in (workspace.PAPERS_FILE, workspace.CITATIONS_FILE, workspace.SCORES_FILE):
        shutil.copy(os.path.join(demo_ws[0], name), os.path.join(ws, name))

    state = build_state(ws)
    client = TestClient(create_app(state))

    created = client.post(
        "/api/collections",
        json={"label": DEMO_LABEL, "paper_ids": list(DEMO_EGO_IDS[:10])},
    )
    assert created.status_code == 201
    cid = created.json()["id"]
    added = client.post(
        f"/api/collections/{cid}/papers",
        json={"paper_ids": list(DEMO_EGO_IDS[10:]), "version": 1},
    )
    assert added.status_code == 200
    funded = client.put(
        f"/api/collections/{cid}/funding",
        json={"start_year": DEMO_FUNDING[0], "end_year": DEMO_FUNDING[1], "version": 2},
    )
    assert funded.status_code == 200
    spec_resp = client.get(f"/api/collections/{cid}/visspec")
    assert spec_resp.status_code == 200
    doc = parse_visspec(spec_resp.text)
    assert doc["ego"]["paper_count"] == len(DEMO_EGO_IDS)

    barrier = threading.Barrier(2)
    statuses = []

    def edit(label):
        barrier.wait()
        resp = client.put(
            f"/api/collections/{cid}/funding",
            json={"start_year": 2000, "end_year": 2004, "version": 3},
        )
        statuses.append(resp.status_code)

    threads = [threading.Thread(target=edit, args=(i,)) for i in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(statuses) == [200, 409]

    fresh = TestClient(create_app(build_state(ws)))
    survived = fresh.get(f"/api/collections/{cid}")
    assert survived.status_code == 200
    assert survived.json()["version"] == 4
    assert fresh.get(f"/api/collections/{cid}/visspec").status_code == 200
    report(
        "service integration",
        "workflow compiles, concurrent edits -> exactly one 409, restart ok",
    )


@pytest.mark.slow
def test_desk_scale_performance(tmp_path):
    papers_path, citations_path, ego_ids, n_edges = synth.big_corpus_files(
        str(tmp_path / "big")
    )
    assert n_edges == 1_000_000

    start = time.perf_counter()
    corpus = corpus_mod.ingest(papers_path, citations_path, mode="strict")
    ingest_s = time.perf_counter() - start
    assert len(corpus) == 100_000
    assert corpus.edge_count() == 1_000_000
    assert ingest_s < 30.0

    start = time.perf_counter()
    scores = compute_eigenfactor(corpus, SolverConfig(tolerance=1e-12))
    score_s = time.perf_counter() - start
    assert scores.residual <= 1e-12
    assert score_s < 10.0

    network = build_ego_network(corpus, scores, ego_ids)
    timelines = compute_timelines(network, corpus, scores)
    start = time.perf_counter()
    doc = compile_visspec(network, timelines, SceneOptions(scholar_label="Big"))
    text = canonical_json(doc)
    compile_s = time.perf_counter() - start
    assert compile_s < 0.5
    assert parse_visspec(text)["schema_version"] == 1
    report(
        "desk-scale performance",
        f"100k papers / 1M edges: ingest {ingest_s:.1f}s (<30), "
        f"eigenfactor {score_s:.1f}s (<10), compile {compile_s:.3f}s (<0.5)",
    )
