"""Tests for app.fan.explorer module."""

import numpy as np
import pytest

from app.config import Config
from app.errors import NotStructurallySolvable
from app.fan import (
    SampleRecord,
    detect_boundaries,
    example_payment,
    example_slice,
    explore_slice,
    state_axis_slice,
)
from app.policy import hoffman_karp


def upper_bias(g1: float, g2: float) -> tuple[float, float, float]:
    return (-2 + 2 * g1, -2 + 2 * g1 + 2 * g2, 0.0)


def lower_bias(g1: float, g2: float) -> tuple[float, float, float]:
    return (-3 + 2 * g1 + g2, -3 + g2, 0.0)


@pytest.fixture
def coarse_map(example_spec):
    return explore_slice(example_spec, example_slice(resolution=5, box=(-0.5, 0.5)))


class TestExploreSlice:
    """Tests for explore_slice function."""

    def test_verdicts_split_by_anti_diagonal(self, coarse_map):
        assert len(coarse_map.records) == 25
        for record in coarse_map.records:
            g1, g2 = record.coords
            if g1 + g2 == 0.0:
                assert record.verdict != "UNIQUE", record.coords
            else:
                assert record.verdict == "UNIQUE", record.coords

    def test_biases_are_anchored_and_certified(self, coarse_map):
        for record in coarse_map.records:
            assert record.bias[2] == 0.0
            assert record.residual <= 1e-9
            assert record.lam == pytest.approx(1.0, abs=1e-9)

    def test_boundary_edges_touch_the_line(self, coarse_map):
        coords = {record.index: record.coords for record in coarse_map.records}
        kinds = {edge.kind for edge in coarse_map.boundaries}
        assert "verdict" in kinds
        for edge in coarse_map.boundaries:
            if edge.kind == "verdict":
                assert 0.0 in (sum(coords[edge.a]), sum(coords[edge.b]))

    def test_payload(self, coarse_map, example_spec):
        payload = coarse_map.to_dict(example_spec)
        assert payload["anchor"] == "3"
        assert sum(payload["counts"].values()) == 25
        header = coarse_map.csv_header(example_spec)
        assert header == ["g1", "g2", "lambda", "verdict", "x1", "x2", "x3", "reason"]
        assert all(len(row) == len(header) for row in coarse_map.csv_rows(example_spec))

    def test_parallel_matches_serial(self, example_spec):
        slice_ = example_slice(resolution=3, box=(-0.5, 0.5))
        serial = explore_slice(example_spec, slice_)
        parallel = explore_slice(example_spec, slice_, config=Config(workers=2))
        assert [r.verdict for r in serial.records] == [r.verdict for r in parallel.records]
        for a, b in zip(serial.records, parallel.records):
            np.testing.assert_array_equal(a.bias, b.bias)

    def test_requires_solvable_game(self, decoupled):
        slice_ = state_axis_slice(decoupled, decoupled.default_payments(), (0,), ((0.0, 1.0),), 2)
        with pytest.raises(NotStructurallySolvable):
            explore_slice(decoupled, slice_)


class TestRegionFormulas:
    """Closed-form biases of the worked example around the origin."""

    @pytest.mark.parametrize("seed", range(5))
    def test_formulas(self, example_spec, seed):
        rng = np.random.default_rng(seed)
        checked = 0
        while checked < 20:
            g1, g2 = rng.uniform(-0.4, 0.4, 2)
            if abs(g1 + g2) < 1e-6:
                continue
            pair, _ = hoffman_karp(example_spec, example_payment((g1, g2, 0.0)))
            expected = upper_bias(g1, g2) if g1 + g2 > 0 else lower_bias(g1, g2)
            np.testing.assert_allclose(pair.anchored(2), expected, atol=1e-8)
            checked += 1

    @pytest.mark.parametrize("seed", range(5))
    def test_local_affinity(self, example_spec, seed):
        rng = np.random.default_rng(seed)
        g = rng.uniform(-0.4, 0.4, 2)
        while abs(g.sum()) < 0.05:
            g = rng.uniform(-0.4, 0.4, 2)
        step = rng.normal(size=2)
        step *= 1e-3 / np.linalg.norm(step)
        biases = [
            hoffman_karp(example_spec, example_payment((*(g + t * step), 0.0)))[0].anchored(2)
            for t in (-1.0, 0.0, 1.0)
        ]
        np.testing.assert_allclose(biases[1], (biases[0] + biases[2]) / 2, atol=1e-6)


class TestDetectBoundaries:
    """Tests for detect_boundaries function."""

    def test_verdict_and_policy_edges(self):
        records = [
            SampleRecord((0,), (0.0,), "UNIQUE", fingerprint=((0,), (0,))),
            SampleRecord((1,), (1.0,), "UNIQUE", fingerprint=((1,), (0,))),
            SampleRecord((2,), (2.0,), "INCONCLUSIVE", fingerprint=((1,), (0,))),
            SampleRecord((3,), (3.0,), "INCONCLUSIVE", fingerprint=((1,), (0,))),
        ]
        edges = detect_boundaries(records, 4)
        assert [(e.a, e.b, e.kind) for e in edges] == [
            ((0,), (1,), "policy"),
            ((1,), (2,), "verdict"),
        ]
