"""Jaccard dissimilarity matrices from incidence data or projections.

For two entity sets A and B the Jaccard dissimilarity is
(|A ∪ B| − |A ∩ B|) / |A ∪ B|: 0 for identical non-empty sets, 1 for
disjoint sets. A projected graph that carries node sizes determines the
same matrix through w(i, j) = |N(i) ∩ N(j)|.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import AbstractSet

import numpy as np

from .model import BipartiteIncidence, DissimMatrix, ParseError, WeightedGraph


def jaccard(a: AbstractSet, b: AbstractSet) -> float:
    """Jaccard dissimilarity between two finite sets, in [0, 1].

    Undefined (raises) when both sets are empty.
    """
    union = len(a | b)
    if union == 0:
        raise ValueError("Jaccard dissimilarity is undefined for two empty sets")
    return (union - len(a & b)) / union


def _check_empty_policy(empty_policy: float) -> float:
    empty_policy = float(empty_policy)
    if not 0.0 <= empty_policy <= 1.0:
        raise ValueError("empty_policy must lie in [0, 1]")
    return empty_policy


def dissim_from_incidence(
    inc: BipartiteIncidence, empty_policy: float = 1.0
) -> DissimMatrix:
    """Pairwise Jaccard dissimilarity of the journals' entity sets.

    Pairs where both sets are empty take the ``empty_policy`` value
    (default 1: journals with no affiliations at all are treated as
    maximally dissimilar rather than identical).
    """
    empty_policy = _check_empty_policy(empty_policy)
    n = inc.n_journals
    d = np.zeros((n, n))
    sets = inc.membership
    for i in range(n):
        for j in range(i + 1, n):
            if not sets[i] and not sets[j]:
                v = empty_policy
            else:
                v = jaccard(sets[i], sets[j])
            d[i, j] = d[j, i] = v
    return DissimMatrix(inc.journal_labels, d)


def dissim_from_graph(graph: WeightedGraph, empty_policy: float = 1.0) -> DissimMatrix:
    """Recover the Jaccard matrix from a projection carrying node sizes.

    d(i, j) = 1 − w / (|N(i)| + |N(j)| − w) with w = 0 for absent edges,
    evaluated as (u − w) / u with u the union size so the result is
    bit-identical to :func:`dissim_from_incidence` on the source incidence.
    """
    if graph.node_size is None:
        raise ValueError("node sizes required for Jaccard recovery")
    empty_policy = _check_empty_policy(empty_policy)
    n = graph.n
    sizes = graph.node_size
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w = graph.weight(i, j)
            union = sizes[i] + sizes[j] - w
            v = empty_policy if union == 0 else (union - w) / union
            d[i, j] = d[j, i] = v
    return DissimMatrix(graph.node_labels, d)


def write_matrix_csv(m: DissimMatrix) -> str:
    """Render a matrix as CSV with labels in the first row and column;
    values keep full precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(m.labels))
    for i, lab in enumerate(m.labels):
        writer.writerow([lab] + [repr(float(v)) for v in m.d[i]])
    return buf.getvalue()


def read_matrix_csv(path: str | Path) -> DissimMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError(f"{path}: empty file")
    labels = tuple(rows[0][1:])
    n = len(labels)
    if len(rows) != n + 1:
        raise ParseError(f"{path}: expected {n} data rows, got {len(rows) - 1}")
    d = np.zeros((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ParseError(f"{path}: row {i + 2}: expected {n + 1} fields")
        if row[0] != labels[i]:
            raise ParseError(
                f"{path}: row {i + 2}: row label {row[0]!r} does not match "
                f"column label {labels[i]!r}"
            )
        try:
            d[i] = [float(v) for v in row[1:]]
        except ValueError as exc:
            raise ParseError(f"{path}: row {i + 2}: malformed value") from exc
    try:
        return DissimMatrix(labels, d)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
