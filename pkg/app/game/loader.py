"""Validation of raw game descriptions (the JSON game format).

Format::

    {
      "states": ["1", "2"],
      "entries": [
        {"state": "1", "min_action": "a", "max_action": "b",
         "payment": 0.5, "transition": {"1": 0.5, "2": 0.5}},
        ...
      ]
    }

Missing transition keys mean probability 0. Action identifiers are ordered by
first appearance in "entries".
"""

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from ..config import Config, get_config
from ..errors import (
    DuplicateKey,
    EmptyActionSet,
    InputError,
    MissingKey,
    ProbabilityRowInvalid,
    UnknownIdentifier,
)
from .._internal import get_logger
from .model import GameSpec, PaymentVector

logger = get_logger(__name__)

ENTRY_FIELDS = ("state", "min_action", "max_action", "payment", "transition")


def _require(data: dict, key: str, where: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise MissingKey(f"Missing key '{key}' in {where}", key=key, where=where)
    return data[key]


def _check_row(row: np.ndarray, where: str, row_tol: float, renormalize: bool) -> np.ndarray:
    """Validate one probability row, renormalizing only when asked to."""
    if np.any(row < 0.0) or np.any(row > 1.0 + row_tol) or not np.all(np.isfinite(row)):
        raise ProbabilityRowInvalid(f"Probability entries out of [0,1] in {where}", where=where)
    total = float(row.sum())
    if abs(total - 1.0) > row_tol:
        if renormalize and total > 0.0:
            logger.info(f"Renormalizing transition row {where} (sum={total!r})")
            return row / total
        raise ProbabilityRowInvalid(
            f"Probability row sums to {total!r} in {where}", where=where, row_sum=total
        )
    return row


def validate(raw: dict, renormalize: bool = False, config: Config | None = None) -> GameSpec:
    """Build a GameSpec from a raw description, checking every invariant.

    Args:
        raw: Parsed JSON game description
        renormalize: Rescale rows whose sum is off by more than the row tolerance
        config: Tolerances (defaults to get_config())

    Returns:
        Validated GameSpec

    Raises:
        MissingKey, UnknownIdentifier, DuplicateKey, ProbabilityRowInvalid, EmptyActionSet
    """
    config = config or get_config()
    states = _require(raw, "states", "game description")
    entries = _require(raw, "entries", "game description")
    if not isinstance(states, list) or not states:
        raise EmptyActionSet("Game needs at least one state")
    states = [str(s) for s in states]
    if not isinstance(entries, list):
        raise InputError("Entries must be a list", where="entries")
    if len(set(states)) != len(states):
        raise DuplicateKey("Duplicate state identifiers", states=states)
    index = {s: i for i, s in enumerate(states)}
    n = len(states)

    min_actions: list[list[str]] = [[] for _ in states]
    max_actions: list[dict[str, list[str]]] = [{} for _ in states]
    rows: dict[tuple[str, str, str], tuple[float, np.ndarray]] = {}

    for position, entry in enumerate(entries):
        where = f"entries[{position}]"
        state, a, b, payment, transition = (_require(entry, key, where) for key in ENTRY_FIELDS)
        state, a, b = str(state), str(a), str(b)
        if state not in index:
            raise UnknownIdentifier(f"Unknown state '{state}' in {where}", state=state)
        if not isinstance(transition, dict):
            raise InputError(f"Transition must be an object in {where}", where=where)
        try:
            payment = float(payment)
        except (TypeError, ValueError):
            raise InputError(f"Payment is not a number in {where}", where=where) from None
        if not math.isfinite(payment):
            raise InputError(f"Payment must be finite in {where}", where=where)

        row = np.zeros(n)
        for target, prob in transition.items():
            if str(target) not in index:
                raise UnknownIdentifier(f"Unknown target state '{target}' in {where}", state=str(target))
            try:
                row[index[str(target)]] = float(prob)
            except (TypeError, ValueError):
                raise ProbabilityRowInvalid(
                    f"Probability of '{target}' is not a number in {where}", where=where
                ) from None
        row = _check_row(row, where, config.row_tol, renormalize)

        i = index[state]
        if (state, a, b) in rows:
            raise DuplicateKey(f"Duplicate entry ({state}, {a}, {b}) in {where}", key=[state, a, b])
        if a not in max_actions[i]:
            min_actions[i].append(a)
            max_actions[i][a] = []
        max_actions[i][a].append(b)
        rows[(state, a, b)] = (payment, row)

    for i, state in enumerate(states):
        if not min_actions[i]:
            raise EmptyActionSet(f"State '{state}' has no actions", state=state)

    payments = []
    transitions = []
    for i, state in enumerate(states):
        for a in min_actions[i]:
            for b in max_actions[i][a]:
                payment, row = rows[(state, a, b)]
                payments.append(payment)
                transitions.append(row)

    spec = GameSpec(
        states=tuple(states),
        min_actions=tuple(tuple(actions) for actions in min_actions),
        max_actions=tuple(
            tuple(tuple(max_actions[i][a]) for a in min_actions[i]) for i in range(n)
        ),
        payment=np.array(payments),
        transition=np.array(transitions),
    )
    logger.debug(f"Validated game with {spec.n} states and {spec.q} transition keys")
    return spec


def load_game(path: Path, renormalize: bool = False, config: Config | None = None) -> GameSpec:
    """Read and validate a game description file."""
    with open(path) as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"Game file is not valid JSON: {e}", path=str(path)) from None
    return validate(raw, renormalize=renormalize, config=config)


def dump_game(spec: GameSpec, payments: PaymentVector | None = None) -> dict:
    """Raw description of a game (inverse of validate up to float formatting)."""
    values = (payments or spec.default_payments()).values
    entries = []
    for k in range(spec.q):
        state, a, b = spec.key_label(k)
        row = spec.transition[k]
        entries.append({
            "state": state,
            "min_action": a,
            "max_action": b,
            "payment": float(values[k]),
            "transition": {spec.states[j]: float(row[j]) for j in np.flatnonzero(row)},
        })
    return {"states": list(spec.states), "entries": entries}


def payments_from_mapping(spec: GameSpec, mapping: dict[tuple[str, str, str], float]) -> PaymentVector:
    """PaymentVector from {(state, min action, max action): value}; the key set must match."""
    labels = [spec.key_label(k) for k in range(spec.q)]
    missing = [label for label in labels if label not in mapping]
    if missing:
        raise MissingKey(f"Payment missing for {missing[0]}", key=list(missing[0]))
    extra = set(mapping) - set(labels)
    if extra:
        raise UnknownIdentifier(f"Payment given for unknown key {sorted(extra)[0]}")
    return PaymentVector(np.array([mapping[label] for label in labels]))
