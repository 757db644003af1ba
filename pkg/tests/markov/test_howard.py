"""Tests for app.markov.howard module."""

import numpy as np
import pytest

from app.config import Config
from app.errors import EnumerationCapExceeded
from app.game import CounterPolicy, reduce_min
from app.markov import (
    EigenPair,
    NotWellPosed,
    evaluate_policy,
    howard_iterations,
    howard_solve,
    lemma_eigenvalue,
)
from tests.factories import random_game, random_payments


class TestEvaluatePolicy:
    """Tests for evaluate_policy function."""

    def test_transient_state_inherits_gain(self, max_chain):
        sigma = max_chain.first_policy()
        evaluation = evaluate_policy(max_chain, max_chain.default_payments(), CounterPolicy(sigma, (1, 0)))
        np.testing.assert_allclose(evaluation.gain, [1.0, 1.0])
        np.testing.assert_allclose(evaluation.bias, [9.0, 0.0])
        assert evaluation.class_gains == (1.0,)

    def test_one_gain_per_final_class(self, max_chain):
        sigma = max_chain.first_policy()
        evaluation = evaluate_policy(max_chain, max_chain.default_payments(), CounterPolicy(sigma, (0, 0)))
        np.testing.assert_allclose(evaluation.gain, [0.0, 1.0])
        assert evaluation.max_gain == 1.0


class TestHowardSolve:
    """Tests for howard_solve function."""

    def test_one_state_takes_best_payment(self, one_state_max):
        pair = howard_solve(one_state_max, one_state_max.default_payments(), one_state_max.first_policy())
        assert isinstance(pair, EigenPair)
        assert pair.lam == pytest.approx(5.0)
        assert one_state_max.counter_policy_labels(pair.counter_policy) == {"1": "high"}

    def test_max_chain(self, max_chain):
        pair = howard_solve(max_chain, max_chain.default_payments(), max_chain.first_policy())
        assert pair.lam == pytest.approx(1.0)
        np.testing.assert_allclose(pair.bias, [0.0, -9.0], atol=1e-12)
        np.testing.assert_allclose(pair.anchored(1), [9.0, 0.0], atol=1e-12)
        assert pair.residual <= 1e-12

    def test_warm_start(self, max_chain):
        sigma = max_chain.first_policy()
        evaluations = list(howard_iterations(
            max_chain, max_chain.default_payments(), sigma, CounterPolicy(sigma, (1, 0)),
        ))
        assert len(evaluations) == 1

    def test_decoupled_is_not_well_posed(self, decoupled):
        outcome = howard_solve(decoupled, decoupled.default_payments(), decoupled.first_policy())
        assert isinstance(outcome, NotWellPosed)
        np.testing.assert_allclose(outcome.gain, [0.0, 1.0])
        assert outcome.spread == pytest.approx(1.0)
        assert outcome.to_dict(decoupled.states)["gain"] == {"1": 0.0, "2": 1.0}

    def test_to_dict(self, one_state_max):
        pair = howard_solve(one_state_max, one_state_max.default_payments(), one_state_max.first_policy())
        payload = pair.to_dict(one_state_max.states)
        assert payload["bias"] == {"1": 0.0}
        assert payload["anchor"] == "1"

    @pytest.mark.parametrize("seed", range(20))
    def test_residual_contract(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 4, max_max_actions=3, full_support=True)
        r = random_payments(rng, spec)
        for sigma in spec.policies():
            pair = howard_solve(spec, r, sigma)
            op = reduce_min(spec, r, sigma)
            assert np.max(np.abs(op(pair.bias) - pair.lam - pair.bias)) <= 1e-9
            assert pair.bias[0] == 0.0

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 4, max_max_actions=3, full_support=True)
        r = random_payments(rng, spec)
        sigma = spec.first_policy()
        pair = howard_solve(spec, r, sigma)
        assert pair.lam == pytest.approx(lemma_eigenvalue(spec, r, sigma), abs=1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_enumeration_for_every_policy(self, seed):
        # Sparse supports, so replies may split the chain into several final classes
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 4, max_max_actions=3)
        r = random_payments(rng, spec)
        for sigma in spec.policies():
            outcome = howard_solve(spec, r, sigma)
            if isinstance(outcome, EigenPair):
                assert outcome.lam == pytest.approx(lemma_eigenvalue(spec, r, sigma), abs=1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_gain_never_decreases(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 5, max_max_actions=3)
        r = random_payments(rng, spec)
        gains = [e.gain for e in howard_iterations(spec, r, spec.first_policy())]
        for before, after in zip(gains, gains[1:]):
            assert np.all(after >= before - 1e-9)


class TestLemmaEigenvalue:
    """Tests for lemma_eigenvalue function."""

    def test_cap(self, one_state_max):
        with pytest.raises(EnumerationCapExceeded):
            lemma_eigenvalue(one_state_max, one_state_max.default_payments(),
                             one_state_max.first_policy(), Config(counter_policy_cap=1))

    def test_one_state(self, one_state_max):
        assert lemma_eigenvalue(one_state_max, one_state_max.default_payments(),
                                one_state_max.first_policy()) == pytest.approx(5.0)
