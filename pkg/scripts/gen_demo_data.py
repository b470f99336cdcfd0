#!/usr/bin/env python3
"""Generate the bundled demo corpus (a synthetic scholar and her field).

Deterministic: a fixed seed drives every choice, so rerunning the script
reproduces data/demo/ byte for byte. The corpus is small enough to read
by eye but rich enough to exercise every pipeline feature: a scholar
("Ada Calder") with fifteen papers across three domains, ninety-odd
citing papers with their own citation structure, background literature
that gives the influence solver something to chew on, a few papers with
missing years or domains, and one author name that collides with a
second id.
"""

import argparse
import json
import os
import random

DOMAINS = [
    "network science",
    "statistical physics",
    "epidemiology",
    "computer science",
    "sociology",
    "ecology",
]

VENUES = [
    "Journal of Complex Systems",
    "Physica D",
    "Network Epidemiology Letters",
    "Proc. Computational Social Science",
    "Annals of Applied Graph Theory",
    "Ecology and Dynamics",
]

FIRST = ["R.", "N.", "T.", "M.", "S.", "J.", "K.", "E.", "L.", "H.", "P.", "D."]
LAST = [
    "Okafor", "Lindqvist", "Marchetti", "Osei", "Tanaka", "Virtanen",
    "Delgado", "Novak", "Ferreira", "Haddad", "Kovacs", "Brandt",
    "Iversen", "Sato", "Mbeki", "Castellano", "Ruiz", "Dominguez",
]


def pick_authors(rng, author_pool, k):
    return rng.sample(author_pool, k)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join("data", "demo"))
    args = parser.parse_args()

    rng = random.Random(42)
    papers = []
    edges = []

    author_pool = []
    for i, (first, last) in enumerate(
        (f, l) for l in LAST for f in FIRST[: len(FIRST) // 2]
    ):
        author_pool.append((f"au{i:03d}", f"{first} {last}"))
    # Same display name under two ids: the manual-disambiguation case.
    author_pool.append(("au900", "T. Okafor"))
    author_pool.append(("au901", "T. Okafor"))
    # A near-miss for substring search on "calder".
    author_pool.append(("au902", "N. Calderwood"))

    # Background literature: cited by everyone, cites itself.
    background = []
    for i in range(250):
        pid = f"bg{i:03d}"
        year = rng.randint(1985, 2009)
        background.append((pid, year))
        papers.append(
            {
                "id": pid,
                "title": f"Background study {i:03d}",
                "year": year,
                "venue": rng.choice(VENUES),
                "domain": rng.choice(DOMAINS) if rng.random() > 0.06 else None,
                "authors": [
                    {"id": aid, "name": name}
                    for aid, name in pick_authors(rng, author_pool[:60], rng.randint(1, 3))
                ],
            }
        )
    background.sort(key=lambda t: (t[1], t[0]))
    for i, (pid, year) in enumerate(background):
        earlier = [b for b, y in background[:i] if y < year]
        for cited in rng.sample(earlier, min(len(earlier), rng.randint(0, 5))):
            edges.append((pid, cited))

    # The demo scholar: mostly network science, with two excursions.
    ada = ("ada-calder", "Ada Calder")
    ada_years = [1994, 1995, 1996, 1997, 1998, 1999, 1999, 2001, 2002, 2003, 2004, 2005, 2006, 2007, 2008]
    ada_domains = ["network science"] * 11 + ["epidemiology", "epidemiology", "sociology", "network science"]
    ada_papers = []
    for i, (year, domain) in enumerate(zip(ada_years, ada_domains), start=1):
        pid = f"ada{i:02d}"
        ada_papers.append((pid, year))
        coauthors = pick_authors(rng, author_pool[:60], rng.randint(0, 2))
        papers.append(
            {
                "id": pid,
                "title": f"Collective dynamics paper {i:02d}",
                "year": year,
                "venue": rng.choice(VENUES[:3]),
                "domain": domain,
                "authors": [{"id": ada[0], "name": ada[1]}]
                + [{"id": aid, "name": name} for aid, name in coauthors],
            }
        )
        earlier_bg = [b for b, y in background if y < year]
        for cited in rng.sample(earlier_bg, rng.randint(2, 5)):
            edges.append((pid, cited))
        for cited_pid, cited_year in ada_papers[:-1]:
            if rng.random() < 0.2 and cited_year < year:
                edges.append((pid, cited_pid))

    # Citing papers: each cites one to four of the scholar's papers.
    alters = []
    for i in range(92):
        pid = f"alt{i:03d}"
        cited_ada = rng.sample(ada_papers, min(len(ada_papers), rng.choice([1, 1, 1, 2, 2, 3, 4])))
        min_year = max(y for _, y in cited_ada)
        year = rng.randint(min(min_year + 1, 2010), 2010)
        if i in (40, 77):
            year = None  # a couple of records with unknown year
        alters.append((pid, year))
        papers.append(
            {
                "id": pid,
                "title": f"Follow-up investigation {i:03d}",
                "year": year,
                "venue": rng.choice(VENUES),
                "domain": rng.choice(DOMAINS[1:]) if rng.random() > 0.25 else (
                    "network science" if rng.random() > 0.3 else None
                ),
                "authors": [
                    {"id": aid, "name": name}
                    for aid, name in pick_authors(rng, author_pool, rng.randint(1, 3))
                ],
            }
        )
        for cited_pid, _ in cited_ada:
            edges.append((pid, cited_pid))
        earlier_alters = [a for a, y in alters[:-1] if y is not None and (year is None or y < year)]
        for cited in rng.sample(earlier_alters, min(len(earlier_alters), rng.randint(0, 2))):
            edges.append((pid, cited))
        for cited in rng.sample([b for b, _ in background], rng.randint(0, 3)):
            edges.append((pid, cited))

    os.makedirs(args.out, exist_ok=True)
    papers_path = os.path.join(args.out, "papers.jsonl")
    citations_path = os.path.join(args.out, "citations.tsv")
    with open(papers_path, "w", encoding="utf-8") as fh:
        for record in papers:
            if record["domain"] is None:
                del record["domain"]
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    with open(citations_path, "w", encoding="utf-8") as fh:
        fh.write("# demo corpus citation edges: citing<TAB>cited\n")
        for citing, cited in edges:
            fh.write(f"{citing}\t{cited}\n")

    print(f"{len(papers)} papers, {len(edges)} edges -> {args.out}")
    print("scholar papers:", ",".join(pid for pid, _ in ada_papers))


if __name__ == "__main__":
    main()
