"""Association indices between two community partitions.

Everything runs off the contingency table of the two partitions,
isolate singleton communities included: chi-square with its degrees of
freedom, Cramér's V, Rajski's coherence in its symmetric and two
asymmetric variants, and the adjusted Rand index.
"""

from __future__ import annotations

import math

import numpy as np

from .model import AlignmentError, AssocReport, ContingencyTable, Partition


def contingency(pa: Partition, pb: Partition) -> ContingencyTable:
    """counts[u][v] = number of nodes in community u+1 of ``pa`` and
    community v+1 of ``pb``; inputs must cover the same aligned nodes."""
    if pa.n_nodes != pb.n_nodes:
        raise AlignmentError(
            f"partition length mismatch: {pa.n_nodes} vs {pb.n_nodes} nodes"
        )
    counts = np.zeros((pa.n_communities, pb.n_communities), dtype=np.int64)
    for u, v in zip(pa.assignment, pb.assignment):
        counts[u - 1, v - 1] += 1
    return ContingencyTable(counts)


def chi_square(t: ContingencyTable) -> tuple[float, int]:
    """Pearson chi-square and (r−1)(c−1) degrees of freedom, no
    continuity correction. A single-row or single-column table is
    exactly independent by construction: (0, 0)."""
    total = t.total
    if total <= 0:
        raise ValueError("chi-square undefined for an empty table")
    if t.r < 2 or t.c < 2:
        return 0.0, 0
    expected = np.outer(t.row_margins, t.col_margins) / total
    observed = t.counts
    mask = expected > 0
    chi2 = float(((observed - expected)[mask] ** 2 / expected[mask]).sum())
    return chi2, (t.r - 1) * (t.c - 1)


def cramers_v_from_chi2(chi2: float, total: int, r: int, c: int) -> float:
    """V = sqrt(chi2 / (n (min(r, c) − 1)))."""
    if min(r, c) < 2:
        raise ValueError("Cramér's V undefined when either partition has one community")
    if total <= 0:
        raise ValueError("Cramér's V undefined for an empty table")
    return math.sqrt(chi2 / (total * (min(r, c) - 1)))


def cramers_v(t: ContingencyTable) -> float:
    chi2, _ = chi_square(t)
    return cramers_v_from_chi2(chi2, t.total, t.r, t.c)


def _entropy(p: np.ndarray) -> float:
    # natural log; 0·log 0 = 0
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def rajski(t: ContingencyTable) -> tuple[float, float, float]:
    """Rajski's coherence (sym, left, right) from empirical entropies.

    With I = H(A) + H(B) − H(A,B): sym = I / H(A,B); left = I / H(B),
    how well the row classification predicts the column one; right =
    I / H(A), the reverse. When both partitions are single communities
    every variant is 1 by convention; any other zero-entropy denominator
    is an error.
    """
    total = t.total
    if total <= 0:
        raise ValueError("Rajski coherence undefined for an empty table")
    p = t.counts / total
    h_a = _entropy(t.row_margins / total)
    h_b = _entropy(t.col_margins / total)
    h_ab = _entropy(p.ravel())
    if h_ab == 0.0:
        return 1.0, 1.0, 1.0
    if h_a == 0.0 or h_b == 0.0:
        raise ValueError(
            "Rajski coherence undefined: one partition has a single community"
        )
    # clips keep the ratios inside [0, 1] against entropy rounding noise
    mutual = max(h_a + h_b - h_ab, 0.0)
    return (
        min(mutual / h_ab, 1.0),
        min(mutual / h_b, 1.0),
        min(mutual / h_a, 1.0),
    )


def _pairs(x: int | np.ndarray):
    return x * (x - 1) / 2


def adjusted_rand(pa: Partition, pb: Partition) -> float:
    """Hubert-Arabie adjusted Rand index; 0 by convention when the
    expected-pairs denominator vanishes (both partitions trivial)."""
    t = contingency(pa, pb)
    n = t.total
    sum_cells = float(_pairs(t.counts.astype(float)).sum())
    sum_a = float(_pairs(t.row_margins.astype(float)).sum())
    sum_b = float(_pairs(t.col_margins.astype(float)).sum())
    total_pairs = _pairs(n)
    if total_pairs == 0:
        return 0.0
    expected = sum_a * sum_b / total_pairs
    denom = 0.5 * (sum_a + sum_b) - expected
    if denom == 0.0:
        return 0.0
    return (sum_cells - expected) / denom


def assoc_report(pa: Partition, pb: Partition) -> AssocReport:
    """All association indices for one partition pair, Table-row shaped."""
    t = contingency(pa, pb)
    chi2, df = chi_square(t)
    sym, left, right = rajski(t)
    return AssocReport(
        chi2=chi2,
        df=df,
        cramers_v=cramers_v_from_chi2(chi2, t.total, t.r, t.c),
        rajski_sym=sym,
        rajski_left=left,
        rajski_right=right,
        ari=adjusted_rand(pa, pb),
    )
