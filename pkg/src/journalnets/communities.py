"""Louvain community detection and network/community descriptives.

Modularity is the weighted Newman-Girvan form with a multiplicative
resolution parameter:

    Q(γ) = Σ_c [ w_c / W − γ (s_c / 2W)² ]

where W is the total edge weight, w_c the weight inside community c and
s_c the summed weighted degree of c. Isolated nodes contribute nothing
to either term and always end up as singleton communities.

Louvain runs the standard two phases (local moving until no gain, then
aggregation) with a seed-shuffled visit order; ties in gain break toward
the lowest community id, and the best of ``restarts`` independent seeded
runs by Q is kept, so results are reproducible for a fixed
(graph, resolution, seed, restarts).
"""

from __future__ import annotations

import math

import numpy as np

from .model import CommunityStats, NetworkStats, Partition, WeightedGraph


def network_stats(graph: WeightedGraph) -> NetworkStats:
    """Density, unweighted average degree, and isolated-node count."""
    n = graph.n
    if n < 2:
        raise ValueError(f"need >=2 journals, got {n}")
    average_degree = 2 * len(graph.edges) / n
    density = average_degree / (n - 1)
    isolated = sum(1 for d in graph.degrees() if d == 0)
    return NetworkStats(density, average_degree, isolated)


def _check_partition(graph: WeightedGraph, partition: Partition) -> None:
    if partition.n_nodes != graph.n:
        raise ValueError(
            f"partition covers {partition.n_nodes} nodes, graph has {graph.n}"
        )


def modularity(
    graph: WeightedGraph, partition: Partition, resolution: float = 1.0
) -> float:
    """Weighted modularity of a partition at the given resolution."""
    _check_partition(graph, partition)
    if resolution <= 0:
        raise ValueError("resolution must be > 0")
    total = graph.total_weight()
    if total == 0:
        raise ValueError("modularity undefined for a graph with no edges")
    comm = partition.assignment
    k = partition.n_communities
    w_in = [0.0] * k
    s_tot = [0.0] * k
    for (i, j), w in graph.edges.items():
        if comm[i] == comm[j]:
            w_in[comm[i] - 1] += w
    for i, deg in enumerate(graph.weighted_degrees()):
        s_tot[comm[i] - 1] += deg
    two_w = 2.0 * total
    return sum(
        w_c / total - resolution * (s_c / two_w) ** 2
        for w_c, s_c in zip(w_in, s_tot)
    )


def ei_index(
    graph: WeightedGraph, partition: Partition, weighted: bool = False
) -> float:
    """E-I index: (external − internal) / (external + internal).

    −1 when every edge lies inside a community, +1 when every edge runs
    between communities. ``weighted`` sums edge weights instead of
    counting edges.
    """
    _check_partition(graph, partition)
    if not graph.edges:
        raise ValueError("E-I index undefined for a graph with no edges")
    internal = external = 0
    comm = partition.assignment
    for (i, j), w in graph.edges.items():
        v = w if weighted else 1
        if comm[i] == comm[j]:
            internal += v
        else:
            external += v
    return (external - internal) / (external + internal)


def _local_moving(
    adj: list[dict[int, float]],
    k: list[float],
    comm: list[int],
    s_tot: list[float],
    order: list[int],
    resolution: float,
    two_w: float,
) -> bool:
    """One phase of gain-driven single-node moves; returns True if any
    node moved. ``comm``/``s_tot`` are updated in place."""
    moved_any = False
    while True:
        moved = False
        for i in order:
            a = comm[i]
            ki = k[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                c = comm[j]
                links[c] = links.get(c, 0.0) + w
            # score(c) ∝ ΔQ of placing i in c, up to terms common to all c
            base = links.get(a, 0.0) - resolution * (s_tot[a] - ki) * ki / two_w
            best_c, best_s = a, base
            for c in sorted(links):
                if c == a:
                    continue
                sc = links[c] - resolution * s_tot[c] * ki / two_w
                if sc > best_s:
                    best_c, best_s = c, sc
            if best_c != a:
                comm[i] = best_c
                s_tot[a] -= ki
                s_tot[best_c] += ki
                moved = moved_any = True
        if not moved:
            return moved_any


def _louvain_run(
    n: int,
    adj0: list[dict[int, float]],
    resolution: float,
    rng: np.random.Generator,
    total: float,
) -> list[int]:
    """One full Louvain run; returns a community label per original node."""
    two_w = 2.0 * total
    node_comm = list(range(n))
    adj = adj0
    self_w = [0.0] * n
    while True:
        m = len(adj)
        k = [sum(a.values()) + 2.0 * s for a, s in zip(adj, self_w)]
        comm = list(range(m))
        s_tot = k.copy()
        order = [int(x) for x in rng.permutation(m)]
        if not _local_moving(adj, k, comm, s_tot, order, resolution, two_w):
            return node_comm
        remap: dict[int, int] = {}
        for i in range(m):
            if comm[i] not in remap:
                remap[comm[i]] = len(remap)
        comm = [remap[c] for c in comm]
        m2 = len(remap)
        node_comm = [comm[node_comm[v]] for v in range(n)]
        if m2 == m:
            return node_comm
        new_self = [0.0] * m2
        new_adj: list[dict[int, float]] = [{} for _ in range(m2)]
        for i in range(m):
            ci = comm[i]
            new_self[ci] += self_w[i]
            for j, w in adj[i].items():
                cj = comm[j]
                if ci == cj:
                    if i < j:
                        new_self[ci] += w
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        adj, self_w = new_adj, new_self


def _renumber_by_size(node_comm: list[int], n: int) -> Partition:
    """Contiguous ids 1..k, largest community first; ties go to the
    community containing the smallest node index."""
    members: dict[int, list[int]] = {}
    for node, c in enumerate(node_comm):
        members.setdefault(c, []).append(node)
    ordered = sorted(members.values(), key=lambda ms: (-len(ms), ms[0]))
    assignment = [0] * n
    for new_id, ms in enumerate(ordered, start=1):
        for node in ms:
            assignment[node] = new_id
    return Partition(tuple(assignment))


def louvain(
    graph: WeightedGraph,
    resolution: float = 1.0,
    seed: int = 0,
    restarts: int = 10,
) -> tuple[Partition, CommunityStats]:
    """Best-of-restarts Louvain partition plus its community statistics.

    An edgeless graph yields the all-singletons partition with NaN
    modularity and E-I (both are undefined without edges).
    """
    if resolution <= 0:
        raise ValueError("resolution must be > 0")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = graph.n
    total = float(graph.total_weight())
    if total == 0.0:
        partition = Partition(tuple(range(1, n + 1)))
        nan = float("nan")
        return partition, CommunityStats(nan, resolution, n, 0, nan, nan)

    adj0: list[dict[int, float]] = [{} for _ in range(n)]
    for (i, j), w in graph.edges.items():
        adj0[i][j] = float(w)
        adj0[j][i] = float(w)

    best_partition: Partition | None = None
    best_q = -math.inf
    for r in range(restarts):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(r,))
        )
        node_comm = _louvain_run(n, adj0, resolution, rng, total)
        partition = _renumber_by_size(node_comm, n)
        q = modularity(graph, partition, resolution)
        if q > best_q:
            best_partition, best_q = partition, q
    assert best_partition is not None

    degrees = graph.degrees()
    non_isolated_comms = {
        best_partition.assignment[i] for i in range(n) if degrees[i] > 0
    }
    stats = CommunityStats(
        modularity=best_q,
        resolution=resolution,
        n_communities=best_partition.n_communities,
        n_non_isolated_communities=len(non_isolated_comms),
        ei_unweighted=ei_index(graph, best_partition, weighted=False),
        ei_weighted=ei_index(graph, best_partition, weighted=True),
    )
    return best_partition, stats
