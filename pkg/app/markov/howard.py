"""Multichain policy iteration for the maximizing player of T^σ.

For a fixed MAX reply π the pair (σ, π) is a Markov chain. Its gain is the
mean payoff of each final class, propagated to transient states; its bias
solves (I - P) v = r - g with v pinned to 0 at the smallest node of every
final class. Improvement is lexicographic: first on P g, then among
gain-optimal actions on r + P v, keeping the incumbent whenever it attains
the max within tie_tol.
"""

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import linalg

from ..config import Config, get_config
from ..errors import CycleDetected, EnumerationCapExceeded, NoEigenpair, SingularSystem
from ..game import CounterPolicy, GameSpec, OnePlayerOperator, PaymentVector, Policy, matrix_of, reduce_min
from .._internal import get_logger
from .chains import ChainStructure, chain_structure, invariant_measure

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class EigenPair:
    """λ and a bias u with T(u) = λ1 + u up to residual; u[anchor] = 0."""
    lam: float
    bias: np.ndarray
    residual: float
    anchor: int = 0
    tolerance: float = 1e-9
    # Terminal MAX reply when produced by policy iteration
    counter_policy: CounterPolicy | None = None

    def anchored(self, j: int) -> np.ndarray:
        """Bias shifted so that entry j is 0."""
        return self.bias - self.bias[j]

    def to_dict(self, states: tuple[str, ...] | None = None) -> dict:
        labels = states or tuple(str(i) for i in range(len(self.bias)))
        return {
            "lambda": self.lam,
            "bias": {labels[i]: float(x) for i, x in enumerate(self.bias)},
            "anchor": labels[self.anchor],
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True, eq=False)
class NotWellPosed:
    """The one-player game has a state-dependent mean payoff; no eigenvalue exists."""
    sigma: Policy
    gain: np.ndarray
    counter_policy: CounterPolicy | None = None

    @property
    def spread(self) -> float:
        return float(self.gain.max() - self.gain.min())

    def to_dict(self, states: tuple[str, ...] | None = None) -> dict:
        labels = states or tuple(str(i) for i in range(len(self.gain)))
        return {
            "error": "NotWellPosed",
            "message": "Mean payoff depends on the initial state",
            "gain": {labels[i]: float(x) for i, x in enumerate(self.gain)},
        }


@dataclass(frozen=True, eq=False)
class PolicyEvaluation:
    pi: CounterPolicy
    structure: ChainStructure
    reward: np.ndarray
    gain: np.ndarray
    bias: np.ndarray
    class_gains: tuple[float, ...] = field(default=())

    @property
    def max_gain(self) -> float:
        return float(self.gain.max())


def _solve(system: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    try:
        return linalg.solve(system, rhs)
    except linalg.LinAlgError as e:
        raise SingularSystem(f"{what} system is singular: {e}") from None


def evaluate_policy(spec: GameSpec, r: PaymentVector, pi: CounterPolicy,
                    config: Config | None = None) -> PolicyEvaluation:
    """Gain and anchored bias of the Markov chain induced by (σ, π).

    Raises:
        SingularSystem: a linear solve failed
    """
    config = config or get_config()
    reward, P = matrix_of(spec, r, pi)
    structure = chain_structure(P, config)
    n = spec.n

    gain = np.zeros(n)
    class_gains = []
    for cls in structure.final_classes:
        value = invariant_measure(P, cls, config).integrate(reward)
        class_gains.append(value)
        gain[sorted(cls)] = value

    transient = sorted(structure.transient)
    if transient:
        recurrent = sorted(structure.recurrent)
        system = np.eye(len(transient)) - P[np.ix_(transient, transient)]
        rhs = P[np.ix_(transient, recurrent)] @ gain[recurrent]
        gain[transient] = _solve(system, rhs, "Transient gain")

    system = np.eye(n) - P
    rhs = reward - gain
    for cls in structure.final_classes:
        a = min(cls)
        system[a, :] = 0.0
        system[a, a] = 1.0
        rhs[a] = 0.0
    bias = _solve(system, rhs, "Bias")
    return PolicyEvaluation(pi, structure, reward, gain, bias, tuple(class_gains))


def _pick(values: np.ndarray, incumbent: int, threshold: float, tol: float) -> int:
    """Incumbent if it is within tol of the best, else the lowest index that is."""
    best = values.max()
    if best <= threshold + tol:
        return incumbent
    return int(np.flatnonzero(values >= best - tol)[0])


def improve_policy(op: OnePlayerOperator, evaluation: PolicyEvaluation,
                   config: Config | None = None) -> CounterPolicy | None:
    """Next MAX reply, or None when evaluation.pi is optimal."""
    config = config or get_config()
    tol = config.tie_tol
    spec, g, v = op.spec, evaluation.gain, evaluation.bias
    P = spec.transition[op.keys]

    gain_values = op.per_state(P @ g)
    choice = [
        _pick(values, b, g[i], tol)
        for i, (values, b) in enumerate(zip(gain_values, evaluation.pi.choice))
    ]
    if tuple(choice) != evaluation.pi.choice:
        return CounterPolicy(op.sigma, tuple(choice))

    bias_values = op.per_state(op.r.values[op.keys] + P @ v)
    for i, b in enumerate(evaluation.pi.choice):
        optimal = np.abs(gain_values[i] - g[i]) <= tol
        candidates = np.where(optimal, bias_values[i], -np.inf)
        choice[i] = _pick(candidates, b, g[i] + v[i], tol)
    if tuple(choice) != evaluation.pi.choice:
        return CounterPolicy(op.sigma, tuple(choice))
    return None


def howard_iterations(spec: GameSpec, r: PaymentVector, sigma: Policy,
                      pi0: CounterPolicy | None = None,
                      config: Config | None = None) -> Iterator[PolicyEvaluation]:
    """Yield the evaluation of every MAX reply visited, ending at an optimal one.

    Raises:
        CycleDetected: a reply is visited twice
    """
    config = config or get_config()
    op = reduce_min(spec, r, sigma)
    pi = pi0 if pi0 is not None else CounterPolicy(sigma, tuple(0 for _ in sigma.choice))
    spec.check_counter_policy(pi)

    visited = set()
    while True:
        if pi.choice in visited:
            raise CycleDetected(
                "Policy improvement revisited a MAX reply",
                sigma=list(sigma.choice), pi=list(pi.choice),
            )
        visited.add(pi.choice)
        evaluation = evaluate_policy(spec, r, pi, config)
        yield evaluation
        nxt = improve_policy(op, evaluation, config)
        if nxt is None:
            return
        pi = nxt


def howard_solve(spec: GameSpec, r: PaymentVector, sigma: Policy,
                 pi0: CounterPolicy | None = None,
                 config: Config | None = None) -> EigenPair | NotWellPosed:
    """Eigenpair of T^σ by multichain policy iteration, or NotWellPosed.

    Args:
        spec: The game
        r: Payment vector
        sigma: MIN policy fixing the one-player game
        pi0: Optional starting MAX reply (warm start)
        config: Tolerances; defaults to the global config

    Returns:
        EigenPair anchored at state 0 when the terminal gain is constant,
        otherwise NotWellPosed carrying the gain vector

    Raises:
        CycleDetected: improvement revisited a reply
        SingularSystem: a linear solve failed
        NoEigenpair: terminal pair fails the residual check
    """
    config = config or get_config()
    steps = 0
    for evaluation in howard_iterations(spec, r, sigma, pi0, config):
        steps += 1
    final = evaluation

    g = final.gain
    if g.max() - g.min() > config.tol:
        logger.info(f"Policy {sigma.choice}: state-dependent gain {g} after {steps} evaluations")
        return NotWellPosed(sigma, g, final.pi)

    lam = float(g.mean())
    bias = final.bias - final.bias[0]
    op = reduce_min(spec, r, sigma)
    res = float(np.max(np.abs(op(bias) - lam - bias)))
    if res > config.tol:
        raise NoEigenpair(
            f"Terminal reply leaves residual {res:.3e} above {config.tol}",
            sigma=list(sigma.choice), residual=res,
        )
    logger.debug(f"Policy {sigma.choice}: lambda={lam} after {steps} evaluations")
    return EigenPair(lam, bias, res, 0, config.tol, final.pi)


def lemma_eigenvalue(spec: GameSpec, r: PaymentVector, sigma: Policy,
                     config: Config | None = None) -> float:
    """max over MAX replies π and final classes C of <m_C, r^{σπ}>.

    Raises:
        EnumerationCapExceeded: |Π^σ| above counter_policy_cap
    """
    config = config or get_config()
    count = spec.counter_policy_count(sigma)
    if count > config.counter_policy_cap:
        raise EnumerationCapExceeded(
            f"{count} MAX replies exceed cap {config.counter_policy_cap}",
            count=count, cap=config.counter_policy_cap,
        )
    best = -np.inf
    for pi in spec.counter_policies(sigma):
        reward, P = matrix_of(spec, r, pi)
        structure = chain_structure(P, config)
        for cls in structure.final_classes:
            best = max(best, invariant_measure(P, cls, config).integrate(reward))
    return float(best)
