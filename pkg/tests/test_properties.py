"""Property-based tests for the algebra and pipeline invariants."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcfpr import (
    DNumber,
    IMatrix,
    Problem,
    build_cfpr,
    build_dcfpr,
    chain_subtract,
    completed_i_matrix,
    i_matrix,
    probability_matrix,
    reduce,
    solve,
    solve_weights,
    triangulate,
    verify,
)
from genutil import random_certain_problem, random_uncertain_problem

# Preference values are drawn from a 0.05 grid so distinct values stay far
# above the 1e-9 merge tolerance and the rational oracle groups exactly the
# combinations the float implementation merges.
_grid_b = st.integers(0, 20).map(lambda k: 0.05 * k)
_mass = st.floats(min_value=0.01, max_value=1.0, allow_nan=False)


@st.composite
def dnumbers(draw, min_components: int = 1, max_components: int = 4):
    k = draw(st.integers(min_components, max_components))
    values = draw(
        st.lists(_grid_b, min_size=k, max_size=k, unique=True)
    )
    masses = draw(st.lists(_mass, min_size=k, max_size=k))
    q = draw(st.floats(min_value=0.1, max_value=1.0, allow_nan=False))
    scale = q / math.fsum(masses)
    return DNumber(tuple((b, v * scale) for b, v in zip(values, masses)))


class TestDNumberProperties:
    @given(dnumbers())
    def test_mass_conserved_under_negation(self, d):
        assert d.negated().q_value() == pytest.approx(d.q_value(), abs=1e-12)

    @given(dnumbers())
    def test_negation_involution(self, d):
        assert d.negated().negated().close_to(d, b_tol=1e-9, v_tol=1e-12)

    @given(dnumbers())
    def test_i_q_duality(self, d):
        assert d.negated().i_value() == pytest.approx(
            d.q_value() - d.i_value(), abs=1e-12
        )

    @given(st.lists(dnumbers(), min_size=1, max_size=5), st.integers(1, 6))
    def test_chain_mass_product_law(self, chain, numerator):
        result = chain_subtract(numerator / 2.0, chain)
        expected = math.prod(d.q_value() for d in chain)
        assert result.q_value() == pytest.approx(expected, abs=1e-12)

    @given(dnumbers(max_components=4), dnumbers(max_components=4))
    def test_permutation_invariance_in_chain(self, d1, d2):
        shuffled1 = DNumber(tuple(reversed(d1.components)))
        shuffled2 = DNumber(tuple(reversed(d2.components)))
        assert chain_subtract(1.5, [d1, d2]) == chain_subtract(
            1.5, [shuffled1, shuffled2]
        )

    @settings(max_examples=60)
    @given(st.lists(dnumbers(max_components=3), min_size=1, max_size=4))
    def test_chain_matches_rational_oracle(self, chain):
        constant = (len(chain) + 1) / 2.0
        groups: dict[Fraction, Fraction] = {}

        def exact_b(b: float) -> Fraction:
            # values are multiples of 0.05 by construction; group them by
            # their intended rational, not by the binary approximation
            return Fraction(round(b * 20), 20)

        def walk(idx, value, mass):
            if idx == len(chain):
                groups[value] = groups.get(value, Fraction(0)) + mass
                return
            for c in chain[idx].components:
                walk(idx + 1, value - exact_b(c.b), mass * Fraction(c.v))

        walk(0, Fraction(constant), Fraction(1))
        expected = sorted((float(b), float(v)) for b, v in groups.items())
        got = sorted((c.b, c.v) for c in chain_subtract(constant, chain).components)
        assert len(got) == len(expected)
        for (gb, gv), (eb, ev) in zip(got, expected):
            assert gb == pytest.approx(eb, abs=1e-9)
            assert gv == pytest.approx(ev, abs=1e-12)


_unit_values = st.lists(
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    min_size=1,
    max_size=7,
)


class TestRelationProperties:
    @given(_unit_values)
    def test_cfpr_always_valid(self, values):
        assert verify(build_cfpr(values)).ok

    @given(_unit_values)
    def test_reduction_commutes_with_construction(self, values):
        problem = Problem(
            tuple(f"A{i + 1}" for i in range(len(values) + 1)),
            tuple(DNumber(((v, 1.0),)) for v in values),
        )
        direct = build_cfpr(values)
        reduced = reduce(build_dcfpr(problem))
        assert np.abs(reduced.entries - direct.entries).max() <= 1e-12

    def test_uncertain_matrices_verify_clean(self):
        rng = np.random.default_rng(202)
        for _ in range(50):
            n = int(rng.integers(2, 8))
            matrix = build_dcfpr(random_uncertain_problem(rng, n))
            assert verify(matrix).ok

    def test_mass_pattern_spans_judgment_products(self):
        rng = np.random.default_rng(303)
        for _ in range(30):
            n = int(rng.integers(3, 7))
            problem = random_uncertain_problem(rng, n)
            matrix = build_dcfpr(problem)
            q = [d.q_value() for d in problem.judgments]
            for j in range(n):
                for i in range(j):
                    expected = math.prod(q[i:j])
                    assert matrix.entries[j][i].q_value() == pytest.approx(
                        expected, abs=1e-12
                    )


class TestSolverProperties:
    @given(
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    )
    def test_probability_reciprocity(self, a, b, q):
        im = IMatrix([[0.5, a], [b, 0.5]], [[1.0, q], [q, 1.0]])
        p = probability_matrix(im).entries
        assert p[0, 1] + p[1, 0] == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= p[0, 1] <= 1.0

    def test_full_certainty_probabilities_are_crisp(self):
        rng = np.random.default_rng(404)
        for _ in range(30):
            n = int(rng.integers(2, 8))
            pm = probability_matrix(
                i_matrix(build_dcfpr(random_certain_problem(rng, n)))
            )
            off = ~np.eye(n, dtype=bool)
            assert set(np.unique(pm.entries[off])) <= {0.0, 0.5, 1.0}

    def test_consistent_relations_have_zero_inconsistency(self):
        rng = np.random.default_rng(505)
        for _ in range(40):
            n = int(rng.integers(2, 8))
            bundle = solve(build_dcfpr(random_certain_problem(rng, n)), "medium")
            assert bundle.inconsistency == pytest.approx(0.0, abs=1e-12)

    def test_inconsistency_bounds(self):
        rng = np.random.default_rng(606)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            bundle = solve(build_dcfpr(random_uncertain_problem(rng, n)), "medium")
            assert -1e-12 <= bundle.inconsistency <= 0.5 + 1e-12

    def test_lambda_shrinks_spread_toward_uniform(self):
        rng = np.random.default_rng(707)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            matrix = build_dcfpr(random_uncertain_problem(rng, n))
            im = completed_i_matrix(i_matrix(matrix))
            ranking = triangulate(probability_matrix(i_matrix(matrix)), "exact")
            lambdas = [8.0, 40.0, 1e6]
            spreads = [
                np.abs(solve_weights(im, ranking, lam).weights - 1.0 / n).max()
                for lam in lambdas
            ]
            assert spreads[0] >= spreads[1] >= spreads[2]
            assert spreads[-1] <= 1e-6

    def test_weights_land_inside_intervals(self):
        rng = np.random.default_rng(808)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            matrix = build_dcfpr(random_uncertain_problem(rng, n))
            bundle = solve(matrix, "low")
            for name, solution in bundle.presets.items():
                if solution is None:
                    continue
                for alt, iv in enumerate(solution.intervals):
                    w = solution.weights[alt]
                    assert iv.lower - 1e-12 <= w <= iv.upper + 1e-12
