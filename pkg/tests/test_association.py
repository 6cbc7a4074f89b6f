import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chi2_contingency
from sklearn.metrics import adjusted_rand_score

import conftest as cf
import oracles
from journalnets.association import (
    adjusted_rand,
    assoc_report,
    chi_square,
    contingency,
    cramers_v,
    cramers_v_from_chi2,
    rajski,
)
from journalnets.model import AlignmentError, ContingencyTable, Partition


def random_partition_pair(rng, n, max_k=5):
    pa = Partition.from_labels(rng.integers(0, max_k, size=n).tolist())
    pb = Partition.from_labels(rng.integers(0, max_k, size=n).tolist())
    return pa, pb


class TestContingency:
    def test_identical_partitions_are_diagonal(self):
        p = Partition((1, 1, 2))
        t = contingency(p, p)
        assert t.counts.tolist() == [[2, 0], [0, 1]]

    def test_crossed_design_has_unit_cells(self):
        t = contingency(Partition((1, 1, 2, 2)), Partition((1, 2, 1, 2)))
        assert t.counts.tolist() == [[1, 1], [1, 1]]

    def test_length_mismatch_is_alignment_error(self):
        with pytest.raises(AlignmentError, match="length mismatch"):
            contingency(Partition((1,)), Partition((1, 2)))

    def test_matches_bruteforce_tally(self):
        rng = np.random.default_rng(3)
        pa, pb = random_partition_pair(rng, 30)
        t = contingency(pa, pb)
        for u in range(t.r):
            for v in range(t.c):
                want = sum(
                    1
                    for i in range(30)
                    if pa.assignment[i] == u + 1 and pb.assignment[i] == v + 1
                )
                assert t.counts[u, v] == want


class TestChiSquare:
    def test_proportional_rows_give_zero(self):
        t = ContingencyTable(np.array([[2, 4], [3, 6]]))
        chi2, df = chi_square(t)
        assert chi2 == pytest.approx(0.0, abs=1e-12)
        assert df == 1

    def test_single_row_is_degenerate(self):
        assert chi_square(ContingencyTable(np.array([[3, 4]]))) == (0.0, 0)

    def test_df_from_shape(self):
        t = ContingencyTable(np.ones((10, 3), dtype=int))
        assert chi_square(t)[1] == 18

    def test_matches_scipy_without_correction(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            pa, pb = random_partition_pair(rng, 40)
            t = contingency(pa, pb)
            if t.r < 2 or t.c < 2:
                continue
            chi2, df = chi_square(t)
            ref = chi2_contingency(np.asarray(t.counts), correction=False)
            assert chi2 == pytest.approx(ref.statistic, rel=1e-12)
            assert df == ref.dof


class TestCramersV:
    def test_formula_backsolves_published_style_inputs(self):
        assert cramers_v_from_chi2(68.59, 79, 10, 3) == pytest.approx(
            np.sqrt(68.59 / 158)
        )

    def test_identical_equal_size_partitions_give_one(self):
        p = Partition((1, 1, 2, 2, 3, 3))
        assert cramers_v(contingency(p, p)) == pytest.approx(1.0)

    def test_zero_chi2_gives_zero(self):
        t = ContingencyTable(np.array([[2, 4], [3, 6]]))
        assert cramers_v(t) == pytest.approx(0.0, abs=1e-9)

    def test_single_community_is_error(self):
        with pytest.raises(ValueError, match="one community"):
            cramers_v(ContingencyTable(np.array([[2, 3]])))

    def test_range(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            pa, pb = random_partition_pair(rng, 25)
            t = contingency(pa, pb)
            if min(t.r, t.c) < 2:
                continue
            assert 0.0 <= cramers_v(t) <= 1.0 + 1e-12


class TestRajski:
    def test_identical_partitions_give_ones(self):
        p = Partition((1, 1, 2, 3))
        assert rajski(contingency(p, p)) == (1.0, 1.0, 1.0)

    def test_independent_uniform_crossing_gives_zeros(self):
        t = ContingencyTable(np.array([[1, 1], [1, 1]]))
        sym, left, right = rajski(t)
        assert sym == pytest.approx(0.0, abs=1e-12)
        assert left == pytest.approx(0.0, abs=1e-12)
        assert right == pytest.approx(0.0, abs=1e-12)

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            pa, pb = random_partition_pair(rng, 35)
            t = contingency(pa, pb)
            if min(t.r, t.c) < 2:
                continue
            got = rajski(t)
            want = oracles.rajski_loops(t.counts.tolist())
            assert got == pytest.approx(want, abs=1e-12)

    def test_transpose_swaps_left_and_right(self):
        rng = np.random.default_rng(17)
        pa, pb = random_partition_pair(rng, 30)
        t = contingency(pa, pb)
        sym, left, right = rajski(t)
        sym_t, left_t, right_t = rajski(t.transposed())
        assert sym_t == pytest.approx(sym, abs=1e-12)
        assert left_t == pytest.approx(right, abs=1e-12)
        assert right_t == pytest.approx(left, abs=1e-12)

    def test_both_trivial_partitions_give_one_by_convention(self):
        t = contingency(Partition((1, 1, 1)), Partition((1, 1, 1)))
        assert rajski(t) == (1.0, 1.0, 1.0)

    def test_one_trivial_partition_is_error(self):
        t = contingency(Partition((1, 1, 1)), Partition((1, 1, 2)))
        with pytest.raises(ValueError, match="single community"):
            rajski(t)

    def test_left_is_prediction_of_columns_by_rows(self):
        # rows refine columns -> rows predict columns perfectly -> left = 1
        pa = Partition((1, 2, 3, 4))
        pb = Partition((1, 1, 2, 2))
        _, left, right = rajski(contingency(pa, pb))
        assert left == pytest.approx(1.0)
        assert right < 1.0


class TestAdjustedRand:
    def test_identical_partitions_give_one(self):
        p = Partition((1, 2, 1, 3, 2))
        assert adjusted_rand(p, p) == 1.0

    def test_matches_pair_enumeration_oracle(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            pa, pb = random_partition_pair(rng, 12)
            got = adjusted_rand(pa, pb)
            assert got == pytest.approx(oracles.ari_pair_enumeration(pa, pb), abs=1e-12)

    def test_matches_sklearn(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            pa, pb = random_partition_pair(rng, 25)
            ref = adjusted_rand_score(pa.assignment, pb.assignment)
            assert adjusted_rand(pa, pb) == pytest.approx(ref, abs=1e-12)

    def test_trivial_denominator_gives_zero(self):
        p = Partition((1, 1, 1))
        assert adjusted_rand(p, p) == 0.0

    @given(data=st.data())
    @settings(max_examples=60)
    def test_relabeling_invariance(self, data):
        pa = data.draw(cf.partitions(min_n=4, max_n=10))
        pb = data.draw(cf.partitions(n=pa.n_nodes))
        shuffle = data.draw(st.permutations(range(1, pa.n_communities + 1)))
        relabeled = Partition.from_labels([shuffle[c - 1] for c in pa.assignment])
        assert adjusted_rand(relabeled, pb) == pytest.approx(
            adjusted_rand(pa, pb), abs=1e-12
        )
        ta, tb = contingency(pa, pb), contingency(relabeled, pb)
        if min(ta.r, ta.c) >= 2:
            assert rajski(tb) == pytest.approx(rajski(ta), abs=1e-12)
            assert cramers_v(tb) == pytest.approx(cramers_v(ta), abs=1e-12)


class TestAssocReport:
    def test_fields_cross_check(self):
        rng = np.random.default_rng(29)
        pa, pb = random_partition_pair(rng, 30)
        t = contingency(pa, pb)
        report = assoc_report(pa, pb)
        chi2, df = chi_square(t)
        assert report.chi2 == chi2 and report.df == df
        assert report.ari == adjusted_rand(pa, pb)

    @given(data=st.data())
    @settings(max_examples=80)
    def test_sym_never_exceeds_left_or_right(self, data):
        pa = data.draw(cf.partitions(min_n=4, max_n=12))
        pb = data.draw(cf.partitions(n=pa.n_nodes))
        t = contingency(pa, pb)
        try:
            sym, left, right = rajski(t)
        except ValueError:
            return
        assert sym <= left + 1e-12
        assert sym <= right + 1e-12
        for v in (sym, left, right):
            assert -1e-12 <= v <= 1.0 + 1e-12
