"""Built-in games: the three-state worked example and small reference instances."""

import numpy as np

from ..game import GameSpec, PaymentVector, perturb_by_state, validate
from .slices import AffineSlice, state_axis_slice

HALF_13 = {"1": 0.5, "3": 0.5}
HALF_12 = {"1": 0.5, "2": 0.5}

# (state, MIN action, MAX action, payment at r0, transition)
EXAMPLE_ENTRIES = (
    ("1", "a1", "b1", 0.0, HALF_13),
    ("1", "a2", "b1", 1.0, HALF_12),
    ("2", "a1", "b1", 2.0, HALF_13),
    ("2", "a2", "b1", 1.0, HALF_12),
    ("2", "a2", "b2", -2.0, {"3": 1.0}),
    ("3", "a1", "b1", -3.0, HALF_13),
    ("3", "a1", "b2", 1.0, {"3": 1.0}),
)


def _raw(states: list[str], entries) -> dict:
    return {
        "states": states,
        "entries": [
            {"state": s, "min_action": a, "max_action": b, "payment": p, "transition": dict(t)}
            for s, a, b, p, t in entries
        ],
    }


def example_raw() -> dict:
    """JSON description of the worked example at r0."""
    return _raw(["1", "2", "3"], EXAMPLE_ENTRIES)


def example_game() -> GameSpec:
    return validate(example_raw())


def example_payment(g=(0.0, 0.0, 0.0)) -> PaymentVector:
    """r0 with g_i added to every payment of state i."""
    spec = example_game()
    return perturb_by_state(spec, spec.default_payments(), np.asarray(g, dtype=np.float64))


def example_fixture() -> tuple[GameSpec, PaymentVector]:
    spec = example_game()
    return spec, spec.default_payments()


def example_slice(resolution: int = 101, box: tuple[float, float] = (-10.0, 10.0)) -> AffineSlice:
    """(g1, g2) plane through r0 with g3 = 0."""
    spec, r0 = example_fixture()
    return state_axis_slice(spec, r0, (0, 1), (box, box), resolution)


def decoupled_game(payments=(0.0, 1.0)) -> GameSpec:
    """Two absorbing states with one action each; mean payoff is (payments)."""
    return validate(_raw(["1", "2"], (
        ("1", "a", "b", payments[0], {"1": 1.0}),
        ("2", "a", "b", payments[1], {"2": 1.0}),
    )))
