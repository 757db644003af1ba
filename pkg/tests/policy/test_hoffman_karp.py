"""Tests for app.policy.hoffman_karp module."""

import numpy as np
import pytest

from app.config import Config
from app.errors import MaxOuterIterationsExceeded
from app.fan import example_payment
from app.game import Policy, residual, value_iterate
from app.markov import EigenPair, NotWellPosed
from app.policy import hoffman_karp, improve_min_policy
from tests.factories import random_game, random_payments

# (g, bias anchored at state 3, final MIN policy)
EXAMPLE_SOLUTIONS = [
    ((0.1, 0.1, 0.0), (-1.8, -1.6, 0.0), {"1": "a1", "2": "a2", "3": "a1"}),
    ((0.1, -0.3, 0.0), (-3.1, -3.3, 0.0), {"1": "a2", "2": "a2", "3": "a1"}),
]


class TestImproveMinPolicy:
    """Tests for improve_min_policy function."""

    def test_keeps_incumbent_on_tie(self, example):
        spec, r = example
        # At x = 0 state 1 has envelopes [0, 1] and state 2 has [2, 1]
        sigma = improve_min_policy(spec, r, Policy((0, 0, 0)), np.zeros(3))
        assert sigma == Policy((0, 1, 0))

    def test_switches_to_lowest_minimizer(self, one_state_min):
        sigma = improve_min_policy(one_state_min, one_state_min.default_payments(), Policy((1,)), np.zeros(1))
        assert sigma == Policy((0,))


class TestHoffmanKarp:
    """Tests for hoffman_karp function."""

    def test_one_state_min(self, one_state_min):
        pair, trace = hoffman_karp(one_state_min, one_state_min.default_payments())
        assert pair.lam == pytest.approx(2.0)
        assert trace.terminal
        assert len(trace.steps) == 1

    def test_switches_from_bad_start(self, one_state_min):
        pair, trace = hoffman_karp(one_state_min, one_state_min.default_payments(), Policy((1,)))
        assert trace.lambdas == pytest.approx([7.0, 2.0])
        assert trace.final_sigma == Policy((0,))

    @pytest.mark.parametrize("g,bias,sigma", EXAMPLE_SOLUTIONS)
    def test_example_solutions(self, example_spec, g, bias, sigma):
        r = example_payment(g)
        pair, trace = hoffman_karp(example_spec, r)
        assert isinstance(pair, EigenPair)
        assert pair.lam == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(pair.anchored(2), bias, atol=1e-9)
        assert example_spec.policy_labels(trace.final_sigma) == sigma
        assert residual(example_spec, r, pair.lam, pair.bias) <= 1e-9

    @pytest.mark.parametrize("g,bias,sigma", EXAMPLE_SOLUTIONS)
    def test_every_start_reaches_the_same_bias(self, example_spec, g, bias, sigma):
        r = example_payment(g)
        for sigma0 in example_spec.policies():
            pair, _ = hoffman_karp(example_spec, r, sigma0)
            np.testing.assert_allclose(pair.anchored(2), bias, atol=1e-9)

    def test_not_well_posed(self, decoupled):
        outcome, trace = hoffman_karp(decoupled, decoupled.default_payments())
        assert isinstance(outcome, NotWellPosed)
        assert trace.failure is outcome
        assert trace.steps == []
        assert trace.to_dict(decoupled)["failure"]["error"] == "NotWellPosed"

    def test_outer_bound(self, one_state_min):
        with pytest.raises(MaxOuterIterationsExceeded):
            hoffman_karp(one_state_min, one_state_min.default_payments(), Policy((1,)), Config(max_outer=1))

    def test_trace_timings_are_opt_in(self, one_state_min):
        _, trace = hoffman_karp(one_state_min, one_state_min.default_payments())
        assert "seconds" not in trace.to_dict(one_state_min)["steps"][0]
        assert trace.to_dict(one_state_min, timings=True)["steps"][0]["seconds"] >= 0.0

    @pytest.mark.parametrize("seed", range(20))
    def test_lambda_never_increases(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 5, max_min_actions=3, full_support=True)
        r = random_payments(rng, spec)
        pair, trace = hoffman_karp(spec, r)
        lambdas = trace.lambdas
        assert len(trace.steps) <= spec.policy_count
        assert all(after <= before + 1e-9 for before, after in zip(lambdas, lambdas[1:]))
        assert residual(spec, r, pair.lam, pair.bias) <= 1e-9

    @pytest.mark.parametrize("seed", range(10))
    def test_value_iteration_bound(self, seed):
        rng = np.random.default_rng(seed)
        spec = random_game(rng, 4, full_support=True)
        r = random_payments(rng, spec)
        pair, _ = hoffman_karp(spec, r)
        k = 500
        spread = float(pair.bias.max() - pair.bias.min())
        values = value_iterate(spec, r, k).values
        assert np.max(np.abs(values - k * pair.lam)) <= spread + 1e-7
