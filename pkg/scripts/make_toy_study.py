#!/usr/bin/env python3
"""Regenerate the bundled six-journal toy study.

Three bipartite inputs over the same journals with a clear two-block
structure ({Alpha, Beta, Gamma} vs {Delta, Epsilon, Zeta}), plus one
journal isolated in the editor network so isolate handling is exercised
end to end. Deterministic content; safe to re-run.

Usage: python scripts/make_toy_study.py [--out tests/data/toy]
"""

from __future__ import annotations

import argparse
from pathlib import Path

JOURNALS = ("J. Alpha", "J. Beta", "J. Gamma", "J. Delta", "J. Epsilon", "J. Zeta")

EDITORS = {
    "J. Alpha": ["e1", "e2", "e3"],
    "J. Beta": ["e1", "e2", "e4"],
    "J. Gamma": ["e2", "e3", "e5"],
    "J. Delta": ["e6", "e7"],
    "J. Epsilon": ["e6", "e7", "e8"],
    "J. Zeta": ["e9"],  # shares no editor: isolated in IE
}

AUTHORS = {
    "J. Alpha": ["a1", "a2", "a3", "a4"],
    "J. Beta": ["a1", "a2", "a5"],
    "J. Gamma": ["a2", "a3", "a6"],
    "J. Delta": ["a7", "a8"],
    "J. Epsilon": ["a7", "a9"],
    "J. Zeta": ["a8", "a9", "a10"],
}

CITING_ARTICLES = {
    "J. Alpha": ["c1", "c2"],
    "J. Beta": ["c1", "c2", "c3"],
    "J. Gamma": ["c1", "c3", "c7"],
    "J. Delta": ["c4", "c5", "c7"],
    "J. Epsilon": ["c4", "c5", "c6"],
    "J. Zeta": ["c4", "c6"],
}

STUDY_YAML = """\
field: toy
networks:
  ie:
    path: ie.csv
    kind: bipartite
    resolution: 1.0
    seed: 7
    restarts: 10
  cc:
    path: cc.csv
    kind: bipartite
    resolution: 1.0
    seed: 7
    restarts: 10
  ia:
    path: ia.csv
    kind: bipartite
    resolution: 1.0
    seed: 7
    restarts: 10
correlation:
  n_permutations: 999
  seed: 11
  alpha: 0.01
  family_size: 3
  centering: classical
"""


def bipartite_csv(affiliations: dict[str, list[str]]) -> str:
    rows = ["journal,entity"]
    for journal in JOURNALS:
        for entity in affiliations[journal]:
            rows.append(f'"{journal}",{entity}')
    return "\n".join(rows) + "\n"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/data/toy")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "ie.csv").write_text(bipartite_csv(EDITORS), encoding="utf-8")
    (out / "ia.csv").write_text(bipartite_csv(AUTHORS), encoding="utf-8")
    (out / "cc.csv").write_text(bipartite_csv(CITING_ARTICLES), encoding="utf-8")
    (out / "study.yaml").write_text(STUDY_YAML, encoding="utf-8")
    print(f"wrote toy study to {out}")


if __name__ == "__main__":
    main()
