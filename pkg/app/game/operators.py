"""Shapley operator, recession operator, policy reductions and value iteration."""

from dataclasses import dataclass, field

import numpy as np

from .._internal import get_logger
from .model import CounterPolicy, GameSpec, PaymentVector, Policy, StateVector

logger = get_logger(__name__)


def _min_max(spec: GameSpec, values: np.ndarray) -> StateVector:
    """min over MIN actions of max over MAX actions of per-key values."""
    slot_max = np.maximum.reduceat(values, spec.slot_starts)
    return np.minimum.reduceat(slot_max, spec.state_slot_starts)


def key_values(spec: GameSpec, r: PaymentVector, x: StateVector) -> np.ndarray:
    """r_i^{ab} + P_i^{ab} x for every key."""
    return r.values + spec.transition @ np.asarray(x, dtype=np.float64)


def shapley_apply(spec: GameSpec, r: PaymentVector, x: StateVector) -> StateVector:
    """[T_r(x)]_i = min_a max_b (r_i^{ab} + P_i^{ab} x)."""
    return _min_max(spec, key_values(spec, r, x))


def recession_apply(spec: GameSpec, x: StateVector) -> StateVector:
    """[T̂(x)]_i = min_a max_b P_i^{ab} x, the payment-free operator."""
    return _min_max(spec, spec.transition @ np.asarray(x, dtype=np.float64))


def slot_values(spec: GameSpec, r: PaymentVector, x: StateVector) -> list[np.ndarray]:
    """Per state, the MAX-envelope value of each MIN action at x."""
    slot_max = np.maximum.reduceat(key_values(spec, r, x), spec.slot_starts)
    bounds = list(spec.state_slot_starts) + [len(slot_max)]
    return [slot_max[bounds[i]:bounds[i + 1]] for i in range(spec.n)]


@dataclass(frozen=True, eq=False)
class OnePlayerOperator:
    """T_r^σ: the game once MIN is committed to sigma; MAX still optimizes."""
    spec: GameSpec
    r: PaymentVector
    sigma: Policy

    keys: np.ndarray = field(init=False)
    starts: np.ndarray = field(init=False)

    def __post_init__(self):
        keys = []
        starts = []
        for i, a in enumerate(self.sigma.choice):
            starts.append(len(keys))
            keys.extend(self.spec.slot(i, a))
        object.__setattr__(self, "keys", np.array(keys, dtype=np.intp))
        object.__setattr__(self, "starts", np.array(starts, dtype=np.intp))

    def action_values(self, x: StateVector) -> np.ndarray:
        """r + P x for the MAX actions available under sigma, flattened by state."""
        x = np.asarray(x, dtype=np.float64)
        return self.r.values[self.keys] + self.spec.transition[self.keys] @ x

    def per_state(self, flat: np.ndarray) -> list[np.ndarray]:
        bounds = list(self.starts) + [len(flat)]
        return [flat[bounds[i]:bounds[i + 1]] for i in range(self.spec.n)]

    def __call__(self, x: StateVector) -> StateVector:
        return np.maximum.reduceat(self.action_values(x), self.starts)

    def best_response(self, x: StateVector) -> CounterPolicy:
        """MAX reply attaining the max at x, lowest action index on ties."""
        choice = tuple(int(np.argmax(values)) for values in self.per_state(self.action_values(x)))
        return CounterPolicy(self.sigma, choice)

    def key(self, i: int, b: int) -> int:
        """Global key index of MAX action b in state i under sigma."""
        return int(self.keys[self.starts[i] + b])

    def actions(self, i: int) -> range:
        return range(len(self.spec.max_actions[i][self.sigma.choice[i]]))


def reduce_min(spec: GameSpec, r: PaymentVector, sigma: Policy) -> OnePlayerOperator:
    """Fix MIN's policy: x ↦ max_{b ∈ B_{i,σ(i)}} (r_i^{σ(i)b} + P_i^{σ(i)b} x)."""
    spec.check_policy(sigma)
    return OnePlayerOperator(spec, r, sigma)


def matrix_of(spec: GameSpec, r: PaymentVector, pi: CounterPolicy) -> tuple[StateVector, np.ndarray]:
    """Payment column r^{σπ} and stochastic matrix P^{σπ} of a policy pair."""
    spec.check_counter_policy(pi)
    rows = [spec.key_index(i, a, b) for i, (a, b) in enumerate(zip(pi.base.choice, pi.choice))]
    return r.values[rows].copy(), spec.transition[rows].copy()


@dataclass(frozen=True, eq=False)
class ValueIteration:
    """Finite-horizon value v^k = T^k(0) and the mean payoff estimate v^k / k."""
    values: StateVector
    mean_estimate: StateVector
    iterations: int

    @property
    def spread(self) -> float:
        """max - min of the mean estimate; large values mean state-dependent mean payoff."""
        return float(self.mean_estimate.max() - self.mean_estimate.min())


def value_iterate(spec: GameSpec, r: PaymentVector, k: int) -> ValueIteration:
    """Run v^{j+1} = T_r(v^j) from v^0 = 0 for k steps."""
    if k < 1:
        raise ValueError(f"Iteration count must be at least 1, got {k}")
    v = np.zeros(spec.n)
    for _ in range(k):
        v = shapley_apply(spec, r, v)
    logger.debug(f"Value iteration: {k} steps, mean estimate {v / k}")
    return ValueIteration(values=v, mean_estimate=v / k, iterations=k)


def offset_payments(spec: GameSpec, nu: StateVector) -> PaymentVector:
    """Payments r_i^{ab} = nu_i, so that T_r = T̂ + nu."""
    nu = np.asarray(nu, dtype=np.float64)
    return PaymentVector(np.array([nu[i] for i, _, _ in spec.keys]))


def perturb_by_state(spec: GameSpec, r: PaymentVector, g: StateVector) -> PaymentVector:
    """Add g_i to every payment of state i (the operator T_r + g)."""
    g = np.asarray(g, dtype=np.float64)
    if g.shape != (spec.n,):
        raise ValueError(f"Perturbation needs {spec.n} entries, got {g.shape}")
    return PaymentVector(r.values + offset_payments(spec, g).values)


def residual(spec: GameSpec, r: PaymentVector, lam: float, u: StateVector) -> float:
    """||T_r(u) - λ1 - u||_∞."""
    u = np.asarray(u, dtype=np.float64)
    return float(np.max(np.abs(shapley_apply(spec, r, u) - lam - u)))
