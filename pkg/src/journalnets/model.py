"""Shared domain types for journal-network studies.

All types are immutable after construction and safe to share across
parallel workers. Node identity is the journal label string; integer
indices are an internal ordering artifact, so helpers for re-aligning
two inputs by label live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


class ParseError(ValueError):
    """An input file could not be parsed; the message names the line."""


class AlignmentError(ValueError):
    """Two inputs disagree on their journal label sets or ordering."""


def _require_unique(labels: Sequence[str], what: str) -> None:
    seen = set()
    for lab in labels:
        if lab in seen:
            raise ValueError(f"duplicate {what} label: {lab!r}")
        seen.add(lab)


@dataclass(frozen=True)
class BipartiteIncidence:
    """Journals x entities membership structure.

    ``membership[i]`` is the set of entity indices affiliated with journal
    ``i``: editors, authors, or citing articles, depending on how the data
    was collected. This is the source of all three one-mode network types
    and of the sets fed to the Jaccard dissimilarity.
    """

    journal_labels: tuple[str, ...]
    entity_labels: tuple[str, ...]
    membership: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        _require_unique(self.journal_labels, "journal")
        _require_unique(self.entity_labels, "entity")
        if len(self.membership) != len(self.journal_labels):
            raise ValueError(
                f"membership has {len(self.membership)} entries for "
                f"{len(self.journal_labels)} journals"
            )
        n_ent = len(self.entity_labels)
        for i, members in enumerate(self.membership):
            for e in members:
                if not 0 <= e < n_ent:
                    raise ValueError(
                        f"journal {self.journal_labels[i]!r}: entity index {e} out of range"
                    )

    @property
    def n_journals(self) -> int:
        return len(self.journal_labels)

    def entity_sets(self) -> tuple[frozenset[int], ...]:
        return self.membership


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted one-mode journal network.

    ``edges`` maps unordered node pairs, stored as ``(i, j)`` with
    ``i < j``, to positive integer weights (shared people or co-citing
    articles; counts, stored exactly). ``node_size``, when present,
    records the entity-set cardinality |N(i)| of each node so that the
    Jaccard dissimilarity can be recovered from the projection alone.

    Construction is permissive: invariants are checked by
    :func:`validate_graph`, which parsers and projections rely on.
    """

    node_labels: tuple[str, ...]
    edges: Mapping[tuple[int, int], int]
    node_size: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.node_labels)

    def weight(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.edges.get((i, j), 0)

    def degrees(self) -> list[int]:
        """Unweighted degree (number of incident edges) per node."""
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def weighted_degrees(self) -> list[int]:
        deg = [0] * self.n
        for (i, j), w in self.edges.items():
            deg[i] += w
            deg[j] += w
        return deg

    def total_weight(self) -> int:
        return sum(self.edges.values())


def validate_graph(graph: WeightedGraph) -> list[str]:
    """Return a list of invariant violations (empty iff the graph is valid).

    Diagnostic only: never raises. Each violation names the offending
    node or edge and the rule it breaks.
    """
    violations: list[str] = []
    n = graph.n
    seen_labels = set()
    for lab in graph.node_labels:
        if lab in seen_labels:
            violations.append(f"duplicate node label {lab!r}")
        seen_labels.add(lab)
    seen_pairs = set()
    for (i, j), w in graph.edges.items():
        name = f"edge ({i}, {j})"
        if not (0 <= i < n and 0 <= j < n):
            violations.append(f"{name}: node index out of range")
            continue
        if i == j:
            violations.append(f"self-loop at {graph.node_labels[i]!r}")
            continue
        pair = (min(i, j), max(i, j))
        if pair in seen_pairs:
            violations.append(f"{name}: more than one edge for pair {pair}")
        seen_pairs.add(pair)
        if i > j:
            violations.append(f"{name}: pair not stored in canonical (i < j) order")
        if not isinstance(w, int) or isinstance(w, bool) or w < 1:
            violations.append(f"{name}: weight {w!r} is not a positive integer count")
    if graph.node_size is not None:
        if len(graph.node_size) != n:
            violations.append(
                f"node_size has {len(graph.node_size)} entries for {n} nodes"
            )
        else:
            for i, s in enumerate(graph.node_size):
                if not isinstance(s, int) or isinstance(s, bool) or s < 0:
                    violations.append(
                        f"node {graph.node_labels[i]!r}: size {s!r} is not a non-negative integer"
                    )
    return violations


@dataclass(frozen=True, eq=False)
class DissimMatrix:
    """Symmetric n x n Jaccard dissimilarity matrix with entries in [0, 1]."""

    labels: tuple[str, ...]
    d: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=float)
        n = len(self.labels)
        _require_unique(self.labels, "matrix")
        if d.shape != (n, n):
            raise ValueError(f"matrix shape {d.shape} does not match {n} labels")
        if np.isnan(d).any():
            raise ValueError("matrix contains NaN entries")
        if not np.array_equal(d, d.T):
            raise ValueError("matrix is not symmetric")
        if np.any(np.diagonal(d) != 0.0):
            raise ValueError("diagonal must be exactly zero")
        if np.any(d < 0.0) or np.any(d > 1.0):
            raise ValueError("entries must lie in [0, 1]")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DissimMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.d, other.d)


@dataclass(frozen=True)
class Partition:
    """Journal -> community assignment with contiguous ids 1..k, all used."""

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        ids = set(self.assignment)
        k = len(ids)
        if ids != set(range(1, k + 1)):
            raise ValueError(
                f"community ids must be exactly 1..{k}, got {sorted(ids)}"
            )

    @property
    def n_nodes(self) -> int:
        return len(self.assignment)

    @property
    def n_communities(self) -> int:
        return len(set(self.assignment))

    def members(self) -> list[list[int]]:
        """Node indices per community, indexed by community id − 1."""
        out: list[list[int]] = [[] for _ in range(self.n_communities)]
        for node, c in enumerate(self.assignment):
            out[c - 1].append(node)
        return out

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Build a partition from arbitrary hashable community labels,
        renumbered 1..k in order of first appearance."""
        ids: dict = {}
        assignment = []
        for lab in labels:
            if lab not in ids:
                ids[lab] = len(ids) + 1
            assignment.append(ids[lab])
        return cls(tuple(assignment))


@dataclass(frozen=True)
class DcorResult:
    """Generalized distance correlation with its permutation test."""

    dcov2: float
    dvar2_a: float
    dvar2_b: float
    rd: float
    sqrt_rd: float
    p_value: float
    n_permutations: int
    seed: int

    def to_json(self) -> dict:
        return {
            "dcov2": self.dcov2,
            "dvar2_a": self.dvar2_a,
            "dvar2_b": self.dvar2_b,
            "rd": self.rd,
            "sqrt_rd": self.sqrt_rd,
            "p_value": self.p_value,
            "n_permutations": self.n_permutations,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Cross-tabulation of two partitions of the same journal set.

    Margins and the grand total are derived, so their consistency
    invariants hold by construction.
    """

    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("counts must be a 2-d array")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def r(self) -> int:
        return self.counts.shape[0]

    @property
    def c(self) -> int:
        return self.counts.shape[1]

    @property
    def row_margins(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_margins(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def transposed(self) -> "ContingencyTable":
        return ContingencyTable(self.counts.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContingencyTable):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)


@dataclass(frozen=True)
class NetworkStats:
    """Whole-network descriptives: density, average degree, isolates."""

    density: float
    average_degree: float
    isolated_count: int

    def to_json(self) -> dict:
        return {
            "density": self.density,
            "average_degree": self.average_degree,
            "isolated_count": self.isolated_count,
        }


@dataclass(frozen=True)
class CommunityStats:
    """Partition-level descriptives for one network's communities."""

    modularity: float
    resolution: float
    n_communities: int
    n_non_isolated_communities: int
    ei_unweighted: float
    ei_weighted: float

    def to_json(self) -> dict:
        return {
            "modularity": self.modularity,
            "resolution": self.resolution,
            "n_communities": self.n_communities,
            "n_non_isolated_communities": self.n_non_isolated_communities,
            "ei_unweighted": self.ei_unweighted,
            "ei_weighted": self.ei_weighted,
        }


@dataclass(frozen=True)
class AssocReport:
    """Association indices between two community partitions."""

    chi2: float
    df: int
    cramers_v: float
    rajski_sym: float
    rajski_left: float
    rajski_right: float
    ari: float

    def to_json(self) -> dict:
        return {
            "chi2": self.chi2,
            "df": self.df,
            "cramers_v": self.cramers_v,
            "rajski_sym": self.rajski_sym,
            "rajski_left": self.rajski_left,
            "rajski_right": self.rajski_right,
            "ari": self.ari,
        }


def reindex_graph(graph: WeightedGraph, labels: Sequence[str]) -> WeightedGraph:
    """Reorder a graph's nodes to match ``labels``.

    Raises AlignmentError when the label sets differ: journals present in
    one network but missing in another are a hard error, never a silent
    intersection.
    """
    labels = tuple(labels)
    _check_same_label_set(graph.node_labels, labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    mapping = [pos[lab] for lab in graph.node_labels]
    edges: dict[tuple[int, int], int] = {}
    for (i, j), w in graph.edges.items():
        a, b = mapping[i], mapping[j]
        if a > b:
            a, b = b, a
        edges[(a, b)] = w
    sizes = None
    if graph.node_size is not None:
        new_sizes = [0] * len(labels)
        for i, s in enumerate(graph.node_size):
            new_sizes[mapping[i]] = s
        sizes = tuple(new_sizes)
    return WeightedGraph(labels, dict(sorted(edges.items())), sizes)


def reindex_incidence(
    inc: BipartiteIncidence, labels: Sequence[str]
) -> BipartiteIncidence:
    """Reorder an incidence's journals to match ``labels`` (same contract
    as :func:`reindex_graph`)."""
    labels = tuple(labels)
    _check_same_label_set(inc.journal_labels, labels)
    pos = {lab: i for i, lab in enumerate(inc.journal_labels)}
    membership = tuple(inc.membership[pos[lab]] for lab in labels)
    return BipartiteIncidence(labels, inc.entity_labels, membership)


def _check_same_label_set(
    have: Sequence[str], want: Sequence[str]
) -> None:
    have_set, want_set = set(have), set(want)
    if have_set == want_set:
        return
    missing = sorted(want_set - have_set)
    extra = sorted(have_set - want_set)
    parts = []
    if missing:
        parts.append(f"missing: {', '.join(repr(m) for m in missing[:5])}")
    if extra:
        parts.append(f"unexpected: {', '.join(repr(e) for e in extra[:5])}")
    raise AlignmentError("journal label sets differ (" + "; ".join(parts) + ")")
