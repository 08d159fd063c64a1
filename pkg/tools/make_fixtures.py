#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixtures (deterministic, seeded).

Writes:
  fixtures/labeled_names_toy.tsv   1,200 labeled names, 100 per class
  fixtures/publications_toy.jsonl  200 publication records

Each class draws its names from a distinct two-letter alphabet, so the corpus
is cleanly separable by character features; tags exercise the
nationality-to-class grouping. The publications corpus reuses the same
alphabets for author names, clusters coauthorship by class (homophily),
concentrates years toward the present (growth-curve shaped) and spreads
papers over the bundled venue communities.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CLASS_ALPHABETS = {
    "ENG": "ab",
    "GER": "cd",
    "FRN": "ef",
    "SPA": "gh",
    "RUS": "ij",
    "ITA": "kl",
    "IND": "mn",
    "CHI": "op",
    "JAP": "qr",
    "KOR": "st",
    "VIE": "uv",
    "ARA": "wx",
}

CLASS_TAGS = {
    "ENG": ["British"],
    "GER": ["German"],
    "FRN": ["French"],
    "SPA": ["Spanish", "Columbian", "Venezuelan"],
    "RUS": ["Russian"],
    "ITA": ["Italian"],
    "IND": ["Indian"],
    "CHI": ["Chinese"],
    "JAP": ["Japanese"],
    "KOR": ["Korean"],
    "VIE": ["Vietnamese"],
    "ARA": ["Egyptian", "Iranian", "Iraqi", "Lebanese", "Syrian", "Tunisian"],
}

# Home venue per synthetic research group; keys match data/communities.json.
GROUP_VENUES = ["SIGIR", "CIKM", "KDD", "ICDM", "ICML", "AAAI", "STOC", "FOCS"]

# Authors per class in the publications corpus.
AUTHOR_POOL = {
    "ENG": 18,
    "GER": 14,
    "FRN": 8,
    "SPA": 8,
    "RUS": 8,
    "ITA": 8,
    "IND": 10,
    "CHI": 18,
    "JAP": 10,
    "KOR": 8,
    "VIE": 6,
    "ARA": 8,
}


def make_token(rng: random.Random, alphabet: str, label: str) -> str:
    length = rng.randint(3, 7)
    token = "".join(rng.choice(alphabet) for _ in range(length))
    # VIE names carry a diacritic now and then so non-ASCII features fire
    if label == "VIE" and "u" in token and rng.random() < 0.5:
        token = token.replace("u", "ư", 1)  # u with horn
    return token


def make_name(rng: random.Random, label: str, taken: set[str]) -> str:
    alphabet = CLASS_ALPHABETS[label]
    while True:
        name = f"{make_token(rng, alphabet, label)} {make_token(rng, alphabet, label)}"
        if name not in taken:
            taken.add(name)
            return name


def write_labeled_names(path: Path) -> None:
    rng = random.Random(1729)
    taken: set[str] = set()
    lines = []
    for label, tags in CLASS_TAGS.items():
        for k in range(100):
            name = make_name(rng, label, taken)
            shown = name.title() if rng.random() < 0.7 else name
            lines.append(f"{shown}\t{tags[k % len(tags)]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def sample_year(rng: random.Random) -> int:
    # skew toward recent years: growth-curve-shaped debut density
    return 1936 + int(74 * rng.random() ** 0.35)


def make_chimera(rng: random.Random, taken: set[str]) -> str:
    """A name mixing four class alphabets; spreads classifier confidence
    thin enough that the decided label falls back to OTH."""
    while True:
        classes = rng.sample(list(CLASS_ALPHABETS.values()), k=4)
        token = lambda: "".join(rng.choice(a) for a in classes for _ in (0, 1))
        name = f"{token()} {token()}"
        if name not in taken:
            taken.add(name)
            return name


def write_publications(path: Path) -> None:
    rng = random.Random(20240601)
    taken: set[str] = set()
    pool = {
        label: [make_name(rng, label, taken) for _ in range(count)]
        for label, count in AUTHOR_POOL.items()
    }
    chimeras = [make_chimera(rng, taken) for _ in range(4)]
    class_list = list(CLASS_ALPHABETS)

    # one research group per class so every label shows up downstream
    groups = []
    for g, home in enumerate(class_list):
        other = class_list[(g + 5) % len(class_list)]
        members = rng.sample(pool[home], k=min(6, len(pool[home])))
        members += rng.sample(pool[other], k=2)
        if g % 3 == 0:
            members.append(chimeras[(g // 3) % len(chimeras)])
        groups.append({"venue": GROUP_VENUES[g % len(GROUP_VENUES)], "members": members})
    # one deliberately lopsided pairing: many ENG-heavy papers with a few VIE
    # guests, so normalized collaboration strength comes out asymmetric
    groups.append({"venue": "SIGIR", "members": pool["ENG"][:8] + pool["VIE"][:2]})

    records = []
    for k in range(200):
        group = groups[k % len(groups)]
        size = rng.choices([1, 2, 3, 4, 5], weights=[10, 30, 32, 18, 10])[0]
        size = min(size, len(group["members"]))
        authors = rng.sample(group["members"], k=size)
        year = sample_year(rng)
        records.append(
            {
                "title": f"Study {k:03d} on collaborative systems",
                "authors": authors,
                "year": year,
                "venue": group["venue"],
            }
        )
    records.sort(key=lambda r: (r["year"], r["title"]))
    lines = [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in records]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    write_labeled_names(FIXTURES / "labeled_names_toy.tsv")
    write_publications(FIXTURES / "publications_toy.jsonl")
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
