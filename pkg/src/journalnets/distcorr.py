"""Generalized distance correlation between dissimilarity matrices.

The statistic operates directly on two aligned dissimilarity matrices:
double-center each, take the normalized inner product (a V-statistic
distance covariance), and scale by the distance variances to get
``rd`` in [0, 1]. Significance comes from a permutation test that
applies a uniform random permutation simultaneously to the rows and
columns of the second raw matrix and recomputes the statistic.

Determinism contract: every permutation replicate r draws from its own
seeded stream (``SeedSequence(seed, spawn_key=(r,))``), so serial and
parallel runs produce bit-identical results for the same inputs, seed
and replicate count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Sequence

import numpy as np

from .model import AlignmentError, DcorResult, DissimMatrix

CENTERINGS = ("classical", "unbiased")


class DcorStats(NamedTuple):
    dcov2: float
    dvar2_a: float
    dvar2_b: float
    rd: float
    sqrt_rd: float


def _as_array(m: DissimMatrix | np.ndarray) -> np.ndarray:
    a = m.d if isinstance(m, DissimMatrix) else np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 2:
        raise ValueError("centering requires n >= 2")
    return a


def double_center(m: DissimMatrix | np.ndarray) -> np.ndarray:
    """Classical double-centering: subtract row and column means, add the
    grand mean. Output rows and columns each sum to zero."""
    a = _as_array(m)
    row = a.mean(axis=1, keepdims=True)
    col = a.mean(axis=0, keepdims=True)
    return a - row - col + a.mean()


def u_center(m: DissimMatrix | np.ndarray) -> np.ndarray:
    """U-centering for the unbiased estimator variant; needs n >= 4.

    Off-diagonal entries subtract row/column sums over n−2 and add the
    grand sum over (n−1)(n−2); the diagonal is zero.
    """
    a = _as_array(m)
    n = a.shape[0]
    if n < 4:
        raise ValueError("u_center requires n >= 4")
    row = a.sum(axis=1, keepdims=True) / (n - 2)
    col = a.sum(axis=0, keepdims=True) / (n - 2)
    grand = a.sum() / ((n - 1) * (n - 2))
    out = a - row - col + grand
    np.fill_diagonal(out, 0.0)
    return out


def _inner(a_cent: np.ndarray, b_cent: np.ndarray, centering: str) -> float:
    n = a_cent.shape[0]
    if centering == "classical":
        return float(np.vdot(a_cent, b_cent)) / (n * n)
    return float(np.vdot(a_cent, b_cent)) / (n * (n - 3))


def _center(a: np.ndarray, centering: str) -> np.ndarray:
    if centering == "classical":
        return double_center(a)
    if centering == "unbiased":
        return u_center(a)
    raise ValueError(f"centering must be one of {CENTERINGS}, got {centering!r}")


def _check_aligned(a: DissimMatrix, b: DissimMatrix) -> None:
    if a.labels != b.labels:
        raise AlignmentError(
            "matrices are not aligned: labels differ or are ordered differently"
        )


def _stats_from_centered(
    a_cent: np.ndarray, b_cent: np.ndarray, centering: str
) -> DcorStats:
    dcov2_raw = _inner(a_cent, b_cent, centering)
    dvar2_a = _inner(a_cent, a_cent, centering)
    dvar2_b = _inner(b_cent, b_cent, centering)
    if dvar2_a <= 0.0 or dvar2_b <= 0.0:
        raise ValueError(
            "distance variance is zero (constant-distance input); rd is undefined"
        )
    dcov2 = max(dcov2_raw, 0.0)
    rd = float(min(dcov2 / np.sqrt(dvar2_a * dvar2_b), 1.0))
    return DcorStats(dcov2, dvar2_a, dvar2_b, rd, float(np.sqrt(rd)))


def dcor(
    a: DissimMatrix, b: DissimMatrix, centering: str = "classical"
) -> DcorStats:
    """Generalized distance correlation of two aligned matrices.

    Returns the squared distance covariance, both distance variances,
    ``rd`` in [0, 1] and its square root. Negative covariance from
    floating-point noise is clipped to zero before the ratio.
    """
    _check_aligned(a, b)
    a_cent = _center(a.d, centering)
    b_cent = _center(b.d, centering)
    return _stats_from_centered(a_cent, b_cent, centering)


def perm_test(
    a: DissimMatrix,
    b: DissimMatrix,
    n_permutations: int = 99999,
    seed: int = 0,
    workers: int = 1,
    centering: str = "classical",
) -> DcorResult:
    """Permutation test of independence between two dissimilarity matrices.

    Each replicate permutes rows and columns of the raw ``b``
    simultaneously, re-centers, and recomputes the (unclipped) squared
    distance covariance; the distance variances are permutation-invariant,
    so comparing on dcov2 orders replicates exactly as rd would.
    p = (1 + #{stat_r >= stat_obs}) / (1 + n_permutations); the identity
    permutation is not excluded.

    Because the centered first matrix has zero row and column sums (and a
    zero diagonal under U-centering), re-centering the permuted matrix
    cannot change the inner product; both the observed and the permuted
    statistics are therefore evaluated as <A_cent, permuted raw b> so
    that exact ties (the identity permutation in particular) stay exact.
    """
    if n_permutations < 1:
        raise ValueError("n_permutations must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    _check_aligned(a, b)
    a_cent = _center(a.d, centering)
    b_cent = _center(b.d, centering)
    stats = _stats_from_centered(a_cent, b_cent, centering)
    b_raw = b.d
    n = a.n
    stat_obs = _inner(a_cent, b_raw, centering)

    def count_range(r0: int, r1: int) -> int:
        count = 0
        for r in range(r0, r1):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(r,))
            )
            perm = rng.permutation(n)
            stat_r = _inner(a_cent, b_raw[np.ix_(perm, perm)], centering)
            if stat_r >= stat_obs:
                count += 1
        return count

    if workers == 1:
        exceed = count_range(0, n_permutations)
    else:
        bounds = np.linspace(0, n_permutations, workers * 4 + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            exceed = sum(
                pool.map(count_range, bounds[:-1], bounds[1:])
            )
    p_value = (1 + exceed) / (1 + n_permutations)
    return DcorResult(
        dcov2=stats.dcov2,
        dvar2_a=stats.dvar2_a,
        dvar2_b=stats.dvar2_b,
        rd=stats.rd,
        sqrt_rd=stats.sqrt_rd,
        p_value=p_value,
        n_permutations=n_permutations,
        seed=seed,
    )


def bonferroni_gate(
    p_values: Sequence[float], alpha: float, family_size: int
) -> list[bool]:
    """Familywise decisions: reject (True) iff p < alpha / family_size.

    The inequality is strict, so p equal to the threshold is accepted.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if family_size < 1:
        raise ValueError("family_size must be >= 1")
    threshold = alpha / family_size
    out = []
    for p in p_values:
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p-value {p!r} outside (0, 1]")
        out.append(p < threshold)
    return out
