"""Shared test fixtures and configuration."""

from pathlib import Path

import pytest

import app.config as config_module
from app.config import Config, reset_config
from app.fan import decoupled_game, example_fixture
from app.game import GameSpec, PaymentVector, validate
from tests.factories import raw_game


# --- Environment Fixtures ---

@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    """Default configuration, unaffected by SOLVER_* variables or a local config.json."""
    for name in list(config_module.os.environ):
        if name.startswith(config_module.ENV_PREFIX):
            monkeypatch.delenv(name)
    monkeypatch.setattr(config_module, "CONFIG_PATH", tmp_path / "missing-config.json")
    reset_config()
    yield
    reset_config()


@pytest.fixture
def config() -> Config:
    return Config()


# --- Game Fixtures ---

@pytest.fixture
def example() -> tuple[GameSpec, PaymentVector]:
    """The three-state worked example at r0."""
    return example_fixture()


@pytest.fixture
def example_spec(example) -> GameSpec:
    return example[0]


@pytest.fixture
def decoupled() -> GameSpec:
    """Two absorbing states paying 0 and 1."""
    return decoupled_game()


@pytest.fixture
def one_state_max() -> GameSpec:
    """One state, one MIN action, MAX chooses payment 3 or 5."""
    return validate(raw_game(["1"], [
        ("1", "a", "low", 3.0, {"1": 1.0}),
        ("1", "a", "high", 5.0, {"1": 1.0}),
    ]))


@pytest.fixture
def one_state_min() -> GameSpec:
    """One state, MIN chooses between envelopes 2 and 7."""
    return validate(raw_game(["1"], [
        ("1", "cheap", "b", 2.0, {"1": 1.0}),
        ("1", "dear", "b", 7.0, {"1": 1.0}),
    ]))


@pytest.fixture
def max_chain() -> GameSpec:
    """State 1 may stay (0) or move to absorbing state 2 (10); state 2 stays (1)."""
    return validate(raw_game(["1", "2"], [
        ("1", "a", "stay", 0.0, {"1": 1.0}),
        ("1", "a", "move", 10.0, {"2": 1.0}),
        ("2", "a", "stay", 1.0, {"2": 1.0}),
    ]))


@pytest.fixture
def tied_absorption() -> GameSpec:
    """Two absorbing states paying 1; state 2 may jump to either with equal value."""
    return validate(raw_game(["1", "2", "3"], [
        ("1", "a", "b", 1.0, {"1": 1.0}),
        ("2", "a", "left", 1.0, {"1": 1.0}),
        ("2", "a", "right", 1.0, {"3": 1.0}),
        ("3", "a", "b", 1.0, {"3": 1.0}),
    ]))
