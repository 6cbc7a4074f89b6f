"""Command-line front end.

Subcommands: ``project`` (bipartite CSV -> Pajek .net + stats),
``dcor`` (two matrix CSVs -> correlation record), ``communities``
(.net -> .clu + stats), ``assoc`` (two .clu -> association record),
``report`` (study config -> full result tables).

Exit codes: 0 success, 1 computation or I/O error, 2 usage error.
``JOURNALNETS_WORKERS`` overrides the permutation-test worker count;
results never depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .association import assoc_report
from .communities import louvain, network_stats
from .config import load_study_config
from .dissimilarity import read_matrix_csv
from .distcorr import CENTERINGS, perm_test
from .ingest import (
    parse_bipartite_csv,
    parse_pajek_clu,
    parse_pajek_net,
    project_cocitation,
    project_interlocking,
    write_pajek_clu,
    write_pajek_net,
)
from .report import run_study, write_text_atomic


def _workers() -> int:
    raw = os.environ.get("JOURNALNETS_WORKERS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"JOURNALNETS_WORKERS must be an integer, got {raw!r}")
    if workers < 1:
        raise ValueError("JOURNALNETS_WORKERS must be >= 1")
    return workers


def _print_json(record: dict) -> None:
    # undefined statistics (NaN) become null so the line stays valid JSON
    clean = {
        k: (None if isinstance(v, float) and v != v else v)
        for k, v in record.items()
    }
    print(json.dumps(clean, sort_keys=True))


def cmd_project(args: argparse.Namespace) -> int:
    inc = parse_bipartite_csv(args.input, args.mode)
    if inc.n_journals < 2:
        raise ValueError(f"need >=2 journals, got {inc.n_journals}")
    project = project_cocitation if args.mode == "cc" else project_interlocking
    graph = project(inc)
    stats = network_stats(graph)
    write_text_atomic(args.output, write_pajek_net(graph))
    _print_json(stats.to_json())
    return 0


def cmd_dcor(args: argparse.Namespace) -> int:
    a = read_matrix_csv(args.a)
    b = read_matrix_csv(args.b)
    result = perm_test(
        a,
        b,
        n_permutations=args.permutations,
        seed=args.seed,
        workers=_workers(),
        centering=args.centering,
    )
    _print_json(result.to_json())
    return 0


def cmd_communities(args: argparse.Namespace) -> int:
    graph = parse_pajek_net(args.input)
    partition, stats = louvain(
        graph, resolution=args.resolution, seed=args.seed, restarts=args.restarts
    )
    write_text_atomic(args.output, write_pajek_clu(partition))
    _print_json(stats.to_json())
    return 0


def cmd_assoc(args: argparse.Namespace) -> int:
    pa = parse_pajek_clu(args.a, args.n)
    pb = parse_pajek_clu(args.b, args.n)
    _print_json(assoc_report(pa, pb).to_json())
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    config = load_study_config(args.config)
    files = run_study(config, Path(args.out), workers=_workers())
    _print_json({"out": str(args.out), "files": files})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="journalnets",
        description="Journal-network construction, correlation and community comparison",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a bipartite CSV to a Pajek .net")
    p.add_argument("--mode", required=True, choices=("ie", "ia", "cc"))
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("dcor", help="distance correlation between two matrix CSVs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--permutations", type=int, default=99999)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--centering", choices=CENTERINGS, default="classical")
    p.set_defaults(func=cmd_dcor)

    p = sub.add_parser("communities", help="Louvain communities of a .net file")
    p.add_argument("--input", required=True)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("assoc", help="association indices between two .clu files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("report", help="run the full study pipeline for one field")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
