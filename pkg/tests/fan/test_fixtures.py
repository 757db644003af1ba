"""Tests for app.fan.fixtures module."""

import numpy as np

from app.fan import example_fixture, example_payment, example_raw
from app.game import residual, shapley_apply
from app.structural import structural_verdict


class TestExampleFixture:
    """Tests for the built-in worked example."""

    def test_payments(self):
        spec, r = example_fixture()
        np.testing.assert_array_equal(r.values, [0, 1, 2, 1, -2, -3, 1])
        assert spec.q == 7
        assert len(example_raw()["entries"]) == 7

    def test_shapley_at_zero(self):
        spec, r = example_fixture()
        np.testing.assert_array_equal(shapley_apply(spec, r, np.zeros(3)), [0.0, 1.0, 1.0])

    def test_structurally_solvable(self):
        spec, _ = example_fixture()
        assert structural_verdict(spec).solvable

    def test_segment_of_eigenvectors_at_origin(self):
        spec, r = example_fixture()
        for u in ([-2.0, -2.0, 0.0], [-3.0, -3.0, 0.0], [-2.5, -2.5, 0.0]):
            assert residual(spec, r, 1.0, np.array(u)) <= 1e-12

    def test_payment_shift(self):
        np.testing.assert_allclose(example_payment((1.0, 0.0, 0.0)).values[:2], [1.0, 2.0])
