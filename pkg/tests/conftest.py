import os

import pytest

from egoflux import workspace
from egoflux.corpus import ingest

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEMO_PAPERS = os.path.join(REPO_ROOT, "data", "demo", "papers.jsonl")
DEMO_CITATIONS = os.path.join(REPO_ROOT, "data", "demo", "citations.tsv")
GOLDEN_VISSPEC = os.path.join(REPO_ROOT, "tests", "golden", "demo_visspec.json")

DEMO_EGO_IDS = tuple(f"ada{i:02d}" for i in range(1, 16))
DEMO_LABEL = "Ada Calder"
DEMO_FUNDING = (1999, 2003)


@pytest.fixture(scope="session")
def demo_ws(tmp_path_factory):
    """Workspace built once from the bundled demo corpus."""
    data_dir = tmp_path_factory.mktemp("demo-ws")
    corpus, scores = workspace.init_workspace(
        DEMO_PAPERS, DEMO_CITATIONS, "strict", str(data_dir)
    )
    return str(data_dir), corpus, scores


@pytest.fixture(scope="session")
def demo_corpus(demo_ws):
    return demo_ws[1]


@pytest.fixture(scope="session")
def demo_scores(demo_ws):
    return demo_ws[2]


@pytest.fixture()
def tiny_corpus(tmp_path):
    """Five papers, two of them an ego pair, with known structure."""
    import synth

    papers = [
        synth.paper("E1", 1990, "bio", venue="J1", authors=[("a1", "Ada Calder")]),
        synth.paper("E2", 1992, "bio", venue="J1", authors=[("a1", "Ada Calder")]),
        synth.paper("A1", 1993, "chem", venue="J2", authors=[("a2", "B. Ng")]),
        synth.paper("A2", 1994, "chem", venue="J2", authors=[("a3", "C. Ortiz")]),
        synth.paper("A3", 1995, None, authors=[("a4", "D. Patel")]),
    ]
    edges = [("A1", "E1"), ("A2", "E1"), ("A2", "E2"), ("A3", "E2"), ("A2", "A1")]
    papers_path, citations_path = synth.write_files(tmp_path, papers, edges)
    return ingest(papers_path, citations_path, mode="strict")
