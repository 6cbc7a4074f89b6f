#!/usr/bin/env python3
"""Sweep the Louvain resolution parameter on one network.

Prints, for each resolution value, the number of communities (total and
non-isolated), the modularity, and both E-I indices. Higher resolutions
should give more, smaller communities; use this to pick a resolution the
way one would eyeball community quality in practice.

Usage: python scripts/resolution_sweep.py --input network.net
       [--resolutions 0.5,0.8,1.0,1.2,1.5,2.0] [--seed 0] [--restarts 10]
"""

from __future__ import annotations

import argparse

from journalnets.communities import louvain
from journalnets.ingest import parse_pajek_net


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True)
    parser.add_argument("--resolutions", default="0.5,0.8,1.0,1.2,1.5,2.0")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=10)
    args = parser.parse_args()

    graph = parse_pajek_net(args.input)
    print(f"{args.input}: {graph.n} nodes, {len(graph.edges)} edges")
    header = f"{'gamma':>6} {'comms':>6} {'non-iso':>8} {'modularity':>11} {'EI':>8} {'EI(w)':>8}"
    print(header)
    for tok in args.resolutions.split(","):
        gamma = float(tok)
        partition, stats = louvain(
            graph, resolution=gamma, seed=args.seed, restarts=args.restarts
        )
        print(
            f"{gamma:6.2f} {stats.n_communities:6d} "
            f"{stats.n_non_isolated_communities:8d} {stats.modularity:11.4f} "
            f"{stats.ei_unweighted:8.3f} {stats.ei_weighted:8.3f}"
        )


if __name__ == "__main__":
    main()
