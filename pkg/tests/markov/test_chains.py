"""Tests for app.markov.chains module."""

import numpy as np
import pytest

from app.errors import NotStochastic
from app.markov import chain_structure, invariant_measure
from tests.factories import random_stochastic


class TestChainStructure:
    """Tests for chain_structure function."""

    def test_identity(self):
        structure = chain_structure(np.eye(2))
        assert structure.final_classes == (frozenset({0}), frozenset({1}))
        assert structure.transient == frozenset()

    def test_absorbing(self):
        structure = chain_structure(np.array([[0.0, 1.0], [0.0, 1.0]]))
        assert structure.final_classes == (frozenset({1}),)
        assert structure.transient == frozenset({0})
        assert structure.recurrent == frozenset({1})

    def test_irreducible(self):
        structure = chain_structure(np.full((2, 2), 0.5))
        assert structure.final_classes == (frozenset({0, 1}),)

    def test_classes_ordered_by_smallest_state(self):
        P = np.array([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        structure = chain_structure(P)
        assert structure.final_classes == (frozenset({1, 2}), frozenset({3}))
        assert structure.transient == frozenset({0})

    def test_rejects_bad_row_sum(self):
        with pytest.raises(NotStochastic):
            chain_structure(np.array([[0.5, 0.4], [0.0, 1.0]]))

    def test_rejects_negative_entries(self):
        with pytest.raises(NotStochastic):
            chain_structure(np.array([[1.5, -0.5], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(NotStochastic):
            chain_structure(np.array([[1.0, 0.0]]))


class TestInvariantMeasure:
    """Tests for invariant_measure function."""

    def test_two_state_chain(self):
        P = np.array([[0.5, 0.5], [0.25, 0.75]])
        measure = invariant_measure(P, frozenset({0, 1}))
        np.testing.assert_allclose(measure.weights, [1 / 3, 2 / 3], atol=1e-12)

    def test_zero_off_class(self):
        P = np.array([[0.0, 1.0], [0.0, 1.0]])
        measure = invariant_measure(P, frozenset({1}))
        np.testing.assert_array_equal(measure.weights, [0.0, 1.0])
        assert measure.integrate(np.array([7.0, 3.0])) == 3.0

    def test_rejects_open_class(self):
        P = np.array([[0.0, 1.0], [0.0, 1.0]])
        with pytest.raises(ValueError, match="closed class"):
            invariant_measure(P, frozenset({0}))

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_power_iteration(self, seed):
        rng = np.random.default_rng(seed)
        P = random_stochastic(rng, 5)
        measure = invariant_measure(P, frozenset(range(5)))
        limit = np.linalg.matrix_power(P, 500)[0]
        np.testing.assert_allclose(measure.weights, limit, atol=1e-10)
        assert measure.weights.sum() == pytest.approx(1.0)
