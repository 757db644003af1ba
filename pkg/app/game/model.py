"""Data model of a finite perfect-information zero-sum stochastic game.

Identifiers are strings at the boundary and dense indices inside. Transition
keys (i, a, b) are stored in canonical order: by state, then MIN action, then
MAX action, so the keys of one (i, a) slot are contiguous and the slots of one
state are contiguous as well.
"""

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
import numpy.typing as npt

StateVector = npt.NDArray[np.float64]


def _frozen(array: npt.ArrayLike) -> np.ndarray:
    """Float64 copy that cannot be written to."""
    out = np.array(array, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class PaymentVector:
    """Transition payments r_i^{ab}, one entry per key of the owning game."""
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: "PaymentVector") -> "PaymentVector":
        return PaymentVector(self.values + np.asarray(other.values))

    def scaled(self, factor: float) -> "PaymentVector":
        return PaymentVector(self.values * factor)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if len(self.values) else 0.0


@dataclass(frozen=True)
class Policy:
    """Stationary MIN policy: one MIN action index per state."""
    choice: tuple[int, ...]


@dataclass(frozen=True)
class CounterPolicy:
    """MAX reply to a fixed MIN policy: one MAX action index per state."""
    base: Policy
    choice: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GameSpec:
    """Validated game: states, nested action sets, payments and transitions.

    Build instances through app.game.loader.validate,
    which checks the invariants; the constructor only derives index tables.
    """
    states: tuple[str, ...]
    min_actions: tuple[tuple[str, ...], ...]
    max_actions: tuple[tuple[tuple[str, ...], ...], ...]
    payment: np.ndarray
    transition: np.ndarray

    keys: tuple[tuple[int, int, int], ...] = field(init=False)
    slot_starts: np.ndarray = field(init=False)
    state_slot_starts: np.ndarray = field(init=False)

    def __post_init__(self):
        keys = []
        slot_starts = []
        state_slot_starts = []
        for i, actions in enumerate(self.min_actions):
            state_slot_starts.append(len(slot_starts))
            for a in range(len(actions)):
                slot_starts.append(len(keys))
                for b in range(len(self.max_actions[i][a])):
                    keys.append((i, a, b))
        object.__setattr__(self, "keys", tuple(keys))
        object.__setattr__(self, "slot_starts", np.array(slot_starts, dtype=np.intp))
        object.__setattr__(self, "state_slot_starts", np.array(state_slot_starts, dtype=np.intp))
        object.__setattr__(self, "payment", _frozen(self.payment))
        object.__setattr__(self, "transition", _frozen(self.transition))

    # --- Sizes ---

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def q(self) -> int:
        return len(self.keys)

    @property
    def policy_count(self) -> int:
        """|Σ|, the number of stationary MIN policies."""
        count = 1
        for actions in self.min_actions:
            count *= len(actions)
        return count

    def counter_policy_count(self, sigma: Policy) -> int:
        """|Π^σ|, the number of MAX replies to sigma."""
        count = 1
        for i, a in enumerate(sigma.choice):
            count *= len(self.max_actions[i][a])
        return count

    # --- Index helpers ---

    def slot(self, i: int, a: int) -> range:
        """Key indices of the (state, MIN action) slot."""
        start = self.slot_starts[self.state_slot_starts[i] + a]
        return range(int(start), int(start) + len(self.max_actions[i][a]))

    def key_index(self, i: int, a: int, b: int) -> int:
        return self.slot(i, a)[b]

    def state_index(self, state_id: str) -> int:
        return self.states.index(state_id)

    def key_label(self, k: int) -> tuple[str, str, str]:
        """Original identifiers of key k."""
        i, a, b = self.keys[k]
        return self.states[i], self.min_actions[i][a], self.max_actions[i][a][b]

    def default_payments(self) -> PaymentVector:
        return PaymentVector(self.payment)

    @property
    def is_deterministic(self) -> bool:
        """Every transition row is a unit vector."""
        return bool(np.all((self.transition == 0.0) | (self.transition == 1.0))
                    and np.all(np.count_nonzero(self.transition, axis=1) == 1))

    @property
    def supports(self) -> np.ndarray:
        """Boolean (q, n) array of strictly positive transition entries."""
        return self.transition > 0.0

    # --- Policies ---

    def first_policy(self) -> Policy:
        return Policy(tuple(0 for _ in self.states))

    def policies(self) -> Iterator[Policy]:
        """All MIN policies in lexicographic index order."""
        for choice in itertools.product(*(range(len(actions)) for actions in self.min_actions)):
            yield Policy(tuple(choice))

    def counter_policies(self, sigma: Policy) -> Iterator[CounterPolicy]:
        """All MAX replies to sigma in lexicographic index order."""
        ranges = (range(len(self.max_actions[i][a])) for i, a in enumerate(sigma.choice))
        for choice in itertools.product(*ranges):
            yield CounterPolicy(sigma, tuple(choice))

    def check_policy(self, sigma: Policy) -> None:
        """Raise ValueError unless sigma is total and picks available actions."""
        if len(sigma.choice) != self.n:
            raise ValueError(f"Policy has {len(sigma.choice)} entries for {self.n} states")
        for i, a in enumerate(sigma.choice):
            if not 0 <= a < len(self.min_actions[i]):
                raise ValueError(f"Policy picks unknown MIN action {a} in state {self.states[i]}")

    def check_counter_policy(self, pi: CounterPolicy) -> None:
        self.check_policy(pi.base)
        if len(pi.choice) != self.n:
            raise ValueError(f"Counter-policy has {len(pi.choice)} entries for {self.n} states")
        for i, b in enumerate(pi.choice):
            if not 0 <= b < len(self.max_actions[i][pi.base.choice[i]]):
                raise ValueError(f"Counter-policy picks unknown MAX action {b} in state {self.states[i]}")

    def policy_labels(self, sigma: Policy) -> dict[str, str]:
        return {self.states[i]: self.min_actions[i][a] for i, a in enumerate(sigma.choice)}

    def counter_policy_labels(self, pi: CounterPolicy) -> dict[str, str]:
        return {
            self.states[i]: self.max_actions[i][pi.base.choice[i]][b]
            for i, b in enumerate(pi.choice)
        }

    def policy_from_labels(self, labels: dict[str, str]) -> Policy:
        """Policy from {state id: MIN action id}."""
        choice = []
        for i, state in enumerate(self.states):
            try:
                choice.append(self.min_actions[i].index(labels[state]))
            except (KeyError, ValueError):
                raise ValueError(f"No valid MIN action given for state {state}") from None
        return Policy(tuple(choice))
