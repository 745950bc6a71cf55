"""Unit tests for the ranking and weight pipeline."""

import math
from itertools import permutations

import numpy as np
import pytest

from dcfpr import (
    DNumber,
    DPreferenceMatrix,
    IMatrix,
    LambdaTooSmall,
    ProbabilityMatrix,
    Problem,
    SizeLimit,
    build_dcfpr,
    completed_i_matrix,
    i_matrix,
    inconsistency_degree,
    probability_matrix,
    solve,
    solve_weights,
    triangulate,
    triangular_view,
    weight_intervals,
)
from dcfpr.solver import upset_sum

TABLE_CERTAIN = {
    2.0: (0.338, 0.312, 0.237, 0.112),
    4.0: (0.294, 0.281, 0.244, 0.181),
    8.0: (0.272, 0.266, 0.247, 0.216),
}
TABLE_UNCERTAIN = {
    2.0: (0.327, 0.309, 0.241, 0.123),
    4.0: (0.289, 0.280, 0.246, 0.186),
    8.0: (0.269, 0.265, 0.248, 0.218),
}


def exhaustive_best(p: np.ndarray) -> float:
    """Oracle: minimum below-diagonal sum over every permutation."""
    n = p.shape[0]
    return min(upset_sum(p, perm) for perm in permutations(range(n)))


@pytest.fixture
def certain_bundle(certain_problem):
    return solve(build_dcfpr(certain_problem), "medium")


@pytest.fixture
def uncertain_bundle(uncertain_problem):
    return solve(build_dcfpr(uncertain_problem), "medium")


class TestIMatrix:
    def test_certain_rows(self, certain_problem):
        im = i_matrix(build_dcfpr(certain_problem))
        assert im.entries[0] == pytest.approx([0.50, 0.55, 0.70, 0.95], abs=1e-12)
        assert np.all(im.q == 1.0)

    def test_uncertain_entries(self, uncertain_problem):
        im = i_matrix(build_dcfpr(uncertain_problem))
        assert im.entries[0, 1] == pytest.approx(0.4360, abs=0.0005)
        assert im.entries[3, 0] == pytest.approx(0.0655, abs=0.0005)

    def test_indifferent(self):
        problem = Problem(
            ("A1", "A2", "A3"),
            (DNumber(((0.5, 1.0),)), DNumber(((0.5, 1.0),))),
        )
        im = i_matrix(build_dcfpr(problem))
        assert np.all(im.entries == pytest.approx(0.5, abs=1e-12))
        assert np.all(im.q == 1.0)

    def test_entry_pairs_sum_to_q(self, uncertain_problem):
        im = i_matrix(build_dcfpr(uncertain_problem))
        assert np.abs(im.entries + im.entries.T - im.q).max() <= 1e-9


class TestProbabilityMatrix:
    def test_partial_mass_interpolates(self):
        im = IMatrix([[0.5, 0.436], [0.364, 0.5]], [[1.0, 0.8], [0.8, 1.0]])
        pm = probability_matrix(im)
        assert pm.entries[0, 1] == pytest.approx(0.68, abs=0.005)
        assert pm.entries[1, 0] == pytest.approx(0.32, abs=0.005)

    def test_full_certainty_is_zero_one(self, certain_problem):
        pm = probability_matrix(i_matrix(build_dcfpr(certain_problem)))
        expected = np.triu(np.ones((4, 4)), 1)
        assert np.array_equal(pm.entries, expected)

    def test_tie_gives_half(self):
        im = IMatrix([[0.5, 0.5], [0.5, 0.5]], np.ones((2, 2)))
        assert probability_matrix(im).entries[0, 1] == 0.5

    def test_large_gap_clamps(self):
        im = IMatrix([[0.5, 0.5456], [0.2544, 0.5]], [[1.0, 0.8], [0.8, 1.0]])
        assert probability_matrix(im).entries[0, 1] == 1.0

    def test_reciprocal_even_when_clamped(self):
        im = IMatrix([[0.5, 0.7], [0.05, 0.5]], [[1.0, 0.75], [0.75, 1.0]])
        pm = probability_matrix(im)
        assert pm.entries[0, 1] + pm.entries[1, 0] == pytest.approx(1.0, abs=1e-12)


class TestTriangulate:
    def test_certain_identity_with_zero_upsets(self, certain_problem):
        pm = probability_matrix(i_matrix(build_dcfpr(certain_problem)))
        ranking = triangulate(pm, "exact")
        assert ranking.order == (0, 1, 2, 3)
        assert ranking.upset_sum == 0.0
        assert ranking.optimal

    def test_uncertain_upset_sum(self, uncertain_problem):
        pm = probability_matrix(i_matrix(build_dcfpr(uncertain_problem)))
        ranking = triangulate(pm, "exact")
        assert ranking.order == (0, 1, 2, 3)
        assert ranking.upset_sum == pytest.approx(0.32, abs=0.005)

    def test_reversed_labels_reverse_order(self, certain_problem):
        # same chain read backwards: judgments negate and reverse
        reversed_problem = Problem(
            tuple(reversed(certain_problem.alternatives)),
            tuple(d.negated() for d in reversed(certain_problem.judgments)),
        )
        pm = probability_matrix(i_matrix(build_dcfpr(reversed_problem)))
        ranking = triangulate(pm, "exact")
        assert ranking.order == (3, 2, 1, 0)
        assert ranking.upset_sum == pytest.approx(
            exhaustive_best(pm.entries), abs=1e-12
        )

    def test_exact_matches_oracle_small_random(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(2, 6))
            upper = rng.uniform(0.0, 1.0, size=(n, n))
            p = np.triu(upper, 1)
            p = p + np.triu(1.0 - upper, 1).T
            ranking = triangulate(ProbabilityMatrix(p), "exact")
            assert ranking.upset_sum == pytest.approx(exhaustive_best(p), abs=1e-12)

    def test_heuristic_flagged_non_optimal(self, certain_problem):
        pm = probability_matrix(i_matrix(build_dcfpr(certain_problem)))
        ranking = triangulate(pm, "heuristic")
        assert not ranking.optimal
        assert ranking.order == (0, 1, 2, 3)

    def test_exact_size_limit(self):
        n = 13
        p = np.full((n, n), 0.4)
        p[np.triu_indices(n, 1)] = 0.6
        np.fill_diagonal(p, 0.0)
        with pytest.raises(SizeLimit):
            triangulate(ProbabilityMatrix(p), "exact")
        assert not triangulate(ProbabilityMatrix(p), "heuristic").optimal

    def test_tie_break_lexicographic(self):
        p = np.full((3, 3), 0.5)
        np.fill_diagonal(p, 0.0)
        ranking = triangulate(ProbabilityMatrix(p), "exact")
        assert ranking.order == (0, 1, 2)


class TestInconsistencyDegree:
    def test_consistent_is_zero(self, certain_bundle):
        assert certain_bundle.inconsistency == 0.0

    def test_uncertain_value(self, uncertain_bundle):
        assert uncertain_bundle.inconsistency == pytest.approx(0.0533, abs=0.0005)

    def test_maximal_ambiguity(self):
        pm = ProbabilityMatrix([[0.0, 0.5], [0.5, 0.0]])
        ranking = triangulate(pm, "exact")
        assert inconsistency_degree(ranking, pm) == 0.5


class TestCompletedIMatrix:
    def test_missing_mass_split_evenly(self, uncertain_problem):
        im = i_matrix(build_dcfpr(uncertain_problem))
        imt = completed_i_matrix(im)
        assert imt.entries[0, 1] == pytest.approx(0.5360, abs=0.0005)
        assert imt.entries[3, 0] == pytest.approx(0.1655, abs=0.0005)
        assert np.all(imt.q == 1.0)
        assert np.abs(imt.entries + imt.entries.T - 1.0).max() <= 1e-9

    def test_certain_matrix_unchanged(self, certain_problem):
        im = i_matrix(build_dcfpr(certain_problem))
        imt = completed_i_matrix(im)
        assert np.array_equal(imt.entries, im.entries)


class TestWeights:
    @pytest.mark.parametrize("lam", [2.0, 4.0, 8.0])
    def test_certain_table(self, certain_problem, lam):
        bundle = solve(build_dcfpr(certain_problem), lam)
        assert bundle.requested.weights == pytest.approx(TABLE_CERTAIN[lam], abs=0.001)

    @pytest.mark.parametrize("lam", [2.0, 4.0, 8.0])
    def test_uncertain_table(self, uncertain_problem, lam):
        bundle = solve(build_dcfpr(uncertain_problem), lam)
        assert bundle.requested.weights == pytest.approx(
            TABLE_UNCERTAIN[lam], abs=0.001
        )

    def test_weights_sum_to_one(self, uncertain_bundle):
        assert math.fsum(uncertain_bundle.requested.weights) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_indifferent_chain_uniform(self):
        problem = Problem(
            ("A1", "A2", "A3", "A4"),
            tuple(DNumber(((0.5, 1.0),)) for _ in range(3)),
        )
        bundle = solve(build_dcfpr(problem), 3.21)
        assert np.all(bundle.requested.weights == pytest.approx(0.25, abs=1e-12))
        assert bundle.lambda_min is None

    def test_two_alternatives(self):
        problem = Problem(("A1", "A2"), (DNumber(((0.7, 1.0),)),))
        bundle = solve(build_dcfpr(problem), 2.0)
        assert bundle.ranking.order == (0, 1)
        assert bundle.requested.weights == pytest.approx([0.55, 0.45], abs=1e-12)

    def test_telescoping(self, uncertain_bundle):
        imt = uncertain_bundle.completed
        order = uncertain_bundle.ranking.order
        weights = uncertain_bundle.requested.weights
        lam = uncertain_bundle.requested.lam
        for k in range(len(order) - 1):
            c_k = imt.entries[order[k], order[k + 1]] - 0.5
            assert weights[order[k]] - weights[order[k + 1]] == pytest.approx(
                c_k / lam, abs=1e-12
            )

    def test_lambda_too_small(self, certain_problem):
        matrix = build_dcfpr(certain_problem)
        with pytest.raises(LambdaTooSmall) as err:
            solve(matrix, 0.5)
        assert err.value.lambda_min == pytest.approx(1.1, abs=1e-9)

    def test_lambda_exactly_minimum_is_feasible(self, certain_problem):
        bundle = solve(build_dcfpr(certain_problem), 1.1)
        assert bundle.requested.weights.min() >= -1e-12

    def test_rejects_nonpositive_lambda(self, certain_problem):
        matrix = build_dcfpr(certain_problem)
        with pytest.raises(ValueError, match="positive"):
            solve(matrix, 0.0)


class TestWeightIntervals:
    def test_certain_intervals(self, certain_bundle):
        ivs = certain_bundle.intervals
        assert certain_bundle.lambda_min == pytest.approx(1.1, abs=1e-9)
        assert ivs[0].upper == pytest.approx(0.409, abs=0.001)
        assert ivs[1].upper == pytest.approx(0.364, abs=0.001)
        assert ivs[2].lower == pytest.approx(0.227, abs=0.001)
        assert ivs[3].lower == pytest.approx(0.0, abs=0.001)
        assert not ivs[0].lower_closed and ivs[0].upper_closed
        assert ivs[2].lower_closed and not ivs[2].upper_closed

    def test_uncertain_intervals(self, uncertain_bundle):
        ivs = uncertain_bundle.intervals
        assert ivs[0].upper == pytest.approx(0.402, abs=0.001)
        assert ivs[2].lower == pytest.approx(0.232, abs=0.001)

    def test_standalone_matches_bundle(self, uncertain_bundle):
        ivs, lambda_min = weight_intervals(
            uncertain_bundle.completed, uncertain_bundle.ranking
        )
        assert ivs == uncertain_bundle.intervals
        assert lambda_min == uncertain_bundle.lambda_min

    def test_standalone_solve_weights(self, uncertain_bundle):
        solution = solve_weights(
            uncertain_bundle.completed, uncertain_bundle.ranking, 4.0
        )
        assert np.array_equal(solution.weights, uncertain_bundle.requested.weights)

    def test_indifferent_intervals_degenerate(self):
        problem = Problem(
            ("A1", "A2", "A3", "A4"),
            tuple(DNumber(((0.5, 1.0),)) for _ in range(3)),
        )
        bundle = solve(build_dcfpr(problem), "medium")
        for iv in bundle.intervals:
            assert iv == (0.25, 0.25, True, True)

    def test_weights_inside_intervals(self, uncertain_problem):
        matrix = build_dcfpr(uncertain_problem)
        for lam in (2.0, 4.0, 8.0):
            bundle = solve(matrix, lam)
            for alt, iv in enumerate(bundle.intervals):
                w = bundle.requested.weights[alt]
                assert iv.lower - 1e-12 <= w <= iv.upper + 1e-12


class TestSolveBundle:
    def test_presets_all_present(self, uncertain_bundle):
        assert set(uncertain_bundle.presets) == {"high", "medium", "low"}
        assert all(v is not None for v in uncertain_bundle.presets.values())

    def test_triangular_views_match_identity_ranking(self, uncertain_bundle):
        assert np.array_equal(
            uncertain_bundle.probability_triangular,
            uncertain_bundle.probability.entries,
        )

    def test_triangular_view_permutes(self):
        entries = np.arange(9.0).reshape(3, 3)
        view = triangular_view(entries, (2, 0, 1))
        assert view[0, 0] == 8.0 and view[0, 1] == 6.0

    def test_default_labels(self, certain_problem):
        bundle = solve(build_dcfpr(certain_problem))
        assert bundle.alternatives == ("A1", "A2", "A3", "A4")

    @staticmethod
    def _late_spread_problem():
        # preference concentrated on the last pair: lambda_min = 5 * 0.5 = 2.5,
        # putting the high preset below feasibility
        values = (0.5, 0.5, 0.5, 0.5, 1.0)
        return Problem(
            ("A1", "A2", "A3", "A4", "A5", "A6"),
            tuple(DNumber(((v, 1.0),)) for v in values),
        )

    def test_infeasible_preset_reported_not_raised(self):
        bundle = solve(build_dcfpr(self._late_spread_problem()), "low")
        assert bundle.lambda_min == pytest.approx(2.5, abs=1e-9)
        assert bundle.presets["high"] is None
        assert any("high" in w for w in bundle.warnings)

    def test_requested_infeasible_raises(self):
        with pytest.raises(LambdaTooSmall):
            solve(build_dcfpr(self._late_spread_problem()), "high")

    def test_unknown_preset_rejected(self, certain_problem):
        with pytest.raises(ValueError, match="unknown credibility"):
            solve(build_dcfpr(certain_problem), "extreme")

    def test_sub_tolerance_inversion_carries_warning(self):
        # a certain pair inverted by less than the 1e-9 sign tolerance ties at
        # p = 0.5, keeps index order, and leaves a tiny negative adjacent step
        from dcfpr import CERTAIN_INDIFFERENCE

        d12 = DNumber(((0.5 - 3e-10, 1.0),))
        matrix = DPreferenceMatrix(
            (
                (CERTAIN_INDIFFERENCE, d12),
                (d12.negated(), CERTAIN_INDIFFERENCE),
            )
        )
        bundle = solve(matrix, "medium")
        assert bundle.ranking.order == (0, 1)
        assert any("invert" in w for w in bundle.warnings)

    def test_relabeling_equivariance(self, certain_problem):
        rng = np.random.default_rng(11)
        matrix = build_dcfpr(certain_problem)
        base = solve(matrix, "medium")
        # new index i holds what used to be alternative perm[i]
        perm = tuple(int(i) for i in rng.permutation(4))
        inverse = {orig: new for new, orig in enumerate(perm)}
        permuted_entries = tuple(
            tuple(matrix.entries[perm[i]][perm[j]] for j in range(4)) for i in range(4)
        )
        permuted = solve(DPreferenceMatrix(permuted_entries), "medium")
        assert permuted.ranking.order == tuple(
            inverse[o] for o in base.ranking.order
        )
        for new_idx in range(4):
            assert permuted.requested.weights[new_idx] == pytest.approx(
                base.requested.weights[perm[new_idx]], abs=1e-12
            )
