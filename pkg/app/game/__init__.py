"""Game data model and operator evaluation."""

from .model import CounterPolicy, GameSpec, PaymentVector, Policy, StateVector
from .loader import dump_game, load_game, payments_from_mapping, validate
from .operators import (
    OnePlayerOperator,
    ValueIteration,
    matrix_of,
    offset_payments,
    perturb_by_state,
    recession_apply,
    reduce_min,
    residual,
    shapley_apply,
    slot_values,
    value_iterate,
)

__all__ = [
    "CounterPolicy",
    "GameSpec",
    "PaymentVector",
    "Policy",
    "StateVector",
    "OnePlayerOperator",
    "ValueIteration",
    "dump_game",
    "load_game",
    "matrix_of",
    "offset_payments",
    "payments_from_mapping",
    "perturb_by_state",
    "recession_apply",
    "reduce_min",
    "residual",
    "shapley_apply",
    "slot_values",
    "validate",
    "value_iterate",
]
