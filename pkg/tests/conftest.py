import numpy as np
from hypothesis import strategies as st

from journalnets.model import BipartiteIncidence, DissimMatrix, Partition, WeightedGraph

# Pajek-safe, CSV-representable label text
label_text = st.text(
    alphabet=st.characters(
        codec="utf-8", exclude_characters='"\n\r', exclude_categories=("Cs", "Cc")
    ),
    min_size=1,
    max_size=12,
)


def journal_labels(n: int) -> tuple[str, ...]:
    return tuple(f"J{i}" for i in range(n))


@st.composite
def incidences(draw, min_journals=2, max_journals=8, max_entities=12):
    n = draw(st.integers(min_journals, max_journals))
    m = draw(st.integers(1, max_entities))
    membership = tuple(
        frozenset(draw(st.sets(st.integers(0, m - 1), max_size=m)))
        for _ in range(n)
    )
    return BipartiteIncidence(
        journal_labels(n), tuple(f"e{k}" for k in range(m)), membership
    )


@st.composite
def weighted_graphs(draw, min_nodes=2, max_nodes=9, max_weight=9):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs)) if pairs else st.just(set()))
    edges = {p: draw(st.integers(1, max_weight)) for p in sorted(chosen)}
    return WeightedGraph(journal_labels(n), edges)


@st.composite
def graphs_with_edges(draw, min_nodes=3, max_nodes=9, max_weight=9):
    graph = draw(weighted_graphs(min_nodes, max_nodes, max_weight))
    if not graph.edges:
        edges = {(0, 1): draw(st.integers(1, max_weight))}
        graph = WeightedGraph(graph.node_labels, edges)
    return graph


@st.composite
def dissim_matrices(draw, min_n=2, max_n=8, labels=None):
    n = len(labels) if labels is not None else draw(st.integers(min_n, max_n))
    vals = draw(
        st.lists(
            st.floats(0.0, 1.0, allow_nan=False),
            min_size=n * (n - 1) // 2,
            max_size=n * (n - 1) // 2,
        )
    )
    d = np.zeros((n, n))
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = next(it)
    return DissimMatrix(labels if labels is not None else journal_labels(n), d)


@st.composite
def partitions(draw, n=None, min_n=1, max_n=12):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n))
    return Partition.from_labels(raw)


def random_dissim(rng: np.random.Generator, n: int, labels=None) -> DissimMatrix:
    """Seeded random matrix for loop-style tests (non-hypothesis)."""
    d = rng.random((n, n))
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return DissimMatrix(labels or journal_labels(n), d)


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4, max_weight=5):
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges[(i, j)] = int(rng.integers(1, max_weight + 1))
    return WeightedGraph(journal_labels(n), edges)
