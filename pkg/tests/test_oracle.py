import numpy as np
import pytest

from walkbandits import (
    GuardError,
    brute_force_genie,
    brute_force_match,
    finite_indices,
    match_arms,
    optimal_tuples,
)
from instancegen import distinct_uniform, free_form

EX2_SETS = (frozenset({1, 2, 3}), frozenset({1, 2, 5}), frozenset({4, 5}))
EX2_INDICES = np.array([0.9, 0.8, 0.7, 0.6, 0.5])
EX1_SETS = (frozenset({1, 3}), frozenset({1, 2, 4}), frozenset({2, 5}))


class TestBruteForceMatch:
    def test_worked_example_argmax_set(self):
        value, argmax = brute_force_match(EX2_INDICES, EX2_SETS)
        assert argmax == {(1, 2, 4), (2, 1, 4)}
        assert value == pytest.approx(0.9 + 0.8 + 0.6)

    def test_single_player(self):
        value, argmax = brute_force_match(EX2_INDICES, (frozenset({2, 5}),))
        assert argmax == {(2,)}
        assert value == pytest.approx(0.8)

    def test_forced_collision_value_zero(self):
        value, argmax = brute_force_match(
            np.array([1.0]), (frozenset({1}), frozenset({1}))
        )
        assert value == 0.0
        assert argmax == {(1, 1)}

    def test_guard(self):
        sets = tuple(frozenset(range(1, 101)) for _ in range(4))
        with pytest.raises(GuardError, match="guard"):
            brute_force_match(np.linspace(0.9, 0.1, 100), sets)

    def test_argmax_set_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            _, sets, _ = free_form(rng, n_max=3, k_max=5)
            idx = distinct_uniform(rng, max(max(s) for s in sets))
            _, base = brute_force_match(idx, sets)
            _, transformed = brute_force_match(3.0 * idx + 2.0, sets)
            assert base == transformed


class TestBruteForceGenie:
    def test_worked_example(self):
        value, assignment = brute_force_genie(EX1_SETS, EX2_INDICES)
        assert assignment == (3, 1, 2)
        assert value == pytest.approx(0.9 + 0.8 + 0.7)

    def test_singleton_distinct_sets(self):
        sets = (frozenset({2}), frozenset({4}))
        value, assignment = brute_force_genie(sets, EX2_INDICES)
        assert assignment == (2, 4)
        assert value == pytest.approx(0.8 + 0.6)

    def test_equals_match_maximum_with_mean_indices(self):
        # with indices = true means and a full assignment available, the
        # matcher's optimum over its reduced sets attains the genie value
        rng = np.random.default_rng(23)
        for _ in range(50):
            _, sets, means = free_form(rng, require_perfect=True)
            genie_value, _ = brute_force_genie(sets, means)
            match_value, _ = brute_force_match(means, sets)
            assert genie_value == match_value


class TestFiniteIndices:
    def test_surrogate_preserves_order(self):
        idx = np.array([np.inf, 0.9, np.inf, 0.1])
        fin = finite_indices(idx)
        assert np.isfinite(fin).all()
        # surrogates sit above every real index
        assert fin[2] > fin[0] > fin[1] > fin[3]

    def test_no_change_when_finite(self):
        idx = np.array([0.3, 0.2])
        assert np.array_equal(finite_indices(idx), idx)


class TestOptimalTuples:
    def test_worked_example(self):
        m = match_arms(EX2_INDICES, EX2_SETS, self_id=1)
        assert optimal_tuples(m, EX2_INDICES) == {(1, 2, 4), (2, 1, 4)}

    def test_infinite_indices_accepted(self):
        idx = np.array([np.inf, np.inf, 0.5])
        sets = (frozenset({1, 2}), frozenset({1, 2}))
        m = match_arms(idx, sets, self_id=1)
        assert optimal_tuples(m, idx) == {(1, 2), (2, 1)}
