"""Tests for app.game.loader module."""

import json

import numpy as np
import pytest

from app.errors import (
    DuplicateKey,
    EmptyActionSet,
    InputError,
    MissingKey,
    ProbabilityRowInvalid,
    UnknownIdentifier,
)
from app.fan import example_raw
from app.game import dump_game, load_game, payments_from_mapping, validate


class TestValidate:
    """Tests for validate function."""

    def test_example_sizes(self):
        spec = validate(example_raw())
        assert spec.n == 3
        assert spec.q == 7
        assert spec.policy_count == 4

    def test_actions_in_order_of_appearance(self):
        spec = validate(example_raw())
        assert spec.min_actions == (("a1", "a2"), ("a1", "a2"), ("a1",))
        assert spec.max_actions[1] == (("b1",), ("b1", "b2"))

    def test_keys_in_canonical_order(self):
        spec = validate(example_raw())
        labels = [spec.key_label(k) for k in range(spec.q)]
        assert labels == [
            ("1", "a1", "b1"), ("1", "a2", "b1"), ("2", "a1", "b1"), ("2", "a2", "b1"),
            ("2", "a2", "b2"), ("3", "a1", "b1"), ("3", "a1", "b2"),
        ]
        np.testing.assert_array_equal(spec.payment, [0, 1, 2, 1, -2, -3, 1])

    def test_missing_transition_entries_are_zero(self):
        spec = validate(example_raw())
        np.testing.assert_array_equal(spec.transition[4], [0.0, 0.0, 1.0])

    def test_missing_key(self):
        raw = example_raw()
        del raw["entries"][0]["payment"]
        with pytest.raises(MissingKey, match="payment"):
            validate(raw)

    def test_unknown_state(self):
        raw = example_raw()
        raw["entries"][0]["state"] = "9"
        with pytest.raises(UnknownIdentifier):
            validate(raw)

    def test_unknown_target_state(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"9": 1.0}
        with pytest.raises(UnknownIdentifier):
            validate(raw)

    def test_row_sum_off(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"1": 0.5, "3": 0.4}
        with pytest.raises(ProbabilityRowInvalid):
            validate(raw)

    def test_negative_probability(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"1": 1.5, "3": -0.5}
        with pytest.raises(ProbabilityRowInvalid):
            validate(raw)

    def test_renormalize_rescales_row(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"1": 0.5, "3": 0.4}
        spec = validate(raw, renormalize=True)
        np.testing.assert_allclose(spec.transition[0], [5 / 9, 0.0, 4 / 9])

    def test_duplicate_entry(self):
        raw = example_raw()
        raw["entries"].append(dict(raw["entries"][0]))
        with pytest.raises(DuplicateKey):
            validate(raw)

    def test_state_without_actions(self):
        raw = example_raw()
        raw["states"].append("4")
        with pytest.raises(EmptyActionSet):
            validate(raw)

    def test_non_numeric_payment(self):
        raw = example_raw()
        raw["entries"][0]["payment"] = "abc"
        with pytest.raises(InputError, match="not a number"):
            validate(raw)

    def test_null_probability(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"1": None}
        with pytest.raises(ProbabilityRowInvalid, match="not a number"):
            validate(raw)

    def test_text_probability(self):
        raw = example_raw()
        raw["entries"][0]["transition"] = {"1": "half", "3": 0.5}
        with pytest.raises(ProbabilityRowInvalid):
            validate(raw)

    @pytest.mark.parametrize("entries", [None, {"state": "1"}, "entries"])
    def test_entries_not_a_list(self, entries):
        raw = example_raw()
        raw["entries"] = entries
        with pytest.raises(InputError, match="must be a list"):
            validate(raw)

    def test_input_errors_exit_with_code_2(self):
        raw = example_raw()
        del raw["states"]
        with pytest.raises(InputError) as info:
            validate(raw)
        assert info.value.exit_code == 2


class TestLoadAndDump:
    """Tests for load_game and dump_game."""

    def test_dump_then_validate_keeps_game(self, tmp_path):
        spec = validate(example_raw())
        path = tmp_path / "game.json"
        path.write_text(json.dumps(dump_game(spec)))
        loaded = load_game(path)
        assert loaded.states == spec.states
        np.testing.assert_array_equal(loaded.payment, spec.payment)
        np.testing.assert_array_equal(loaded.transition, spec.transition)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "game.json"
        path.write_text("{not json")
        with pytest.raises(InputError, match="not valid JSON"):
            load_game(path)


class TestPaymentsFromMapping:
    """Tests for payments_from_mapping function."""

    def test_builds_vector_in_key_order(self, example_spec):
        mapping = {example_spec.key_label(k): float(k) for k in range(example_spec.q)}
        np.testing.assert_array_equal(payments_from_mapping(example_spec, mapping).values, range(7))

    def test_missing_key(self, example_spec):
        with pytest.raises(MissingKey):
            payments_from_mapping(example_spec, {})

    def test_unknown_key(self, example_spec):
        mapping = {example_spec.key_label(k): 0.0 for k in range(example_spec.q)}
        mapping[("1", "zz", "b1")] = 1.0
        with pytest.raises(UnknownIdentifier):
            payments_from_mapping(example_spec, mapping)
