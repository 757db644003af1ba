"""Hoffman-Karp policy iteration for the two-player operator T.

Each outer step solves the one-player game of the current MIN policy with
Howard's algorithm, then lets MIN switch, in every state, to an action whose
MAX envelope is minimal at the new bias. The incumbent action is kept
whenever it attains that minimum.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from ..config import Config, get_config
from ..errors import MaxOuterIterationsExceeded, NoEigenpair
from ..game import CounterPolicy, GameSpec, PaymentVector, Policy, residual, slot_values
from ..markov import EigenPair, NotWellPosed, howard_solve
from .._internal import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class OuterStep:
    sigma: Policy
    lam: float
    bias: np.ndarray
    # ||T(v) - λ1 - v||∞ against the two-player operator
    residual: float
    seconds: float
    counter_policy: CounterPolicy | None = None


@dataclass(eq=False)
class IterationTrace:
    steps: list[OuterStep] = field(default_factory=list)
    terminal: bool = False
    failure: NotWellPosed | None = None

    @property
    def lambdas(self) -> list[float]:
        return [step.lam for step in self.steps]

    @property
    def final_sigma(self) -> Policy | None:
        return self.steps[-1].sigma if self.steps else None

    def to_dict(self, spec: GameSpec, timings: bool = False) -> dict:
        steps = []
        for k, step in enumerate(self.steps):
            entry = {
                "step": k,
                "sigma": spec.policy_labels(step.sigma),
                "lambda": step.lam,
                "bias": {spec.states[i]: float(x) for i, x in enumerate(step.bias)},
                "residual": step.residual,
            }
            if timings:
                entry["seconds"] = step.seconds
            steps.append(entry)
        payload = {"steps": steps, "terminal": self.terminal}
        if self.failure is not None:
            payload["failure"] = self.failure.to_dict(spec.states)
        return payload


def improve_min_policy(spec: GameSpec, r: PaymentVector, sigma: Policy, v: np.ndarray,
                       config: Config | None = None) -> Policy:
    """argmin over MIN actions of the MAX envelope at v; incumbent first, then lowest index."""
    config = config or get_config()
    choice = []
    for values, a in zip(slot_values(spec, r, v), sigma.choice):
        best = values.min()
        if values[a] <= best + config.tie_tol:
            choice.append(a)
        else:
            choice.append(int(np.flatnonzero(values <= best + config.tie_tol)[0]))
    return Policy(tuple(choice))


def _warm_start(spec: GameSpec, previous: CounterPolicy | None, sigma: Policy) -> CounterPolicy | None:
    """Carry the last MAX reply over to states where MIN did not switch."""
    if previous is None:
        return None
    choice = tuple(
        b if a_old == a_new else 0
        for b, a_old, a_new in zip(previous.choice, previous.base.choice, sigma.choice)
    )
    return CounterPolicy(sigma, choice)


def hoffman_karp(spec: GameSpec, r: PaymentVector, sigma0: Policy | None = None,
                 config: Config | None = None) -> tuple[EigenPair | NotWellPosed, IterationTrace]:
    """Eigenpair of T_r by two-player policy iteration.

    Args:
        spec: The game
        r: Payment vector
        sigma0: Starting MIN policy, first action everywhere by default
        config: Tolerances and the outer iteration bound

    Returns:
        (EigenPair, trace) on success; (NotWellPosed, trace) when some
        one-player game has a state-dependent gain, with trace.failure set

    Raises:
        MaxOuterIterationsExceeded: more than max_outer steps (|Σ|+1 by default)
        NoEigenpair: terminal pair fails the residual check against T
    """
    config = config or get_config()
    sigma = sigma0 if sigma0 is not None else spec.first_policy()
    spec.check_policy(sigma)
    bound = config.max_outer if config.max_outer is not None else spec.policy_count + 1

    trace = IterationTrace()
    pi0 = None
    for k in range(bound):
        started = time.perf_counter()
        outcome = howard_solve(spec, r, sigma, pi0, config)
        if isinstance(outcome, NotWellPosed):
            logger.warning(f"Outer step {k}: policy {sigma.choice} is not well posed, gain {outcome.gain}")
            trace.failure = outcome
            return outcome, trace

        res = residual(spec, r, outcome.lam, outcome.bias)
        trace.steps.append(OuterStep(
            sigma, outcome.lam, outcome.bias, res,
            time.perf_counter() - started, outcome.counter_policy,
        ))
        logger.debug(f"Outer step {k}: sigma={sigma.choice}, lambda={outcome.lam}, residual={res:.3e}")

        nxt = improve_min_policy(spec, r, sigma, outcome.bias, config)
        if nxt == sigma:
            trace.terminal = True
            if res > config.tol:
                raise NoEigenpair(
                    f"Terminal policy leaves residual {res:.3e} above {config.tol}",
                    sigma=list(sigma.choice), residual=res,
                )
            logger.info(f"Policy iteration converged in {k + 1} outer steps, lambda={outcome.lam}")
            return EigenPair(outcome.lam, outcome.bias, res, 0, config.tol, outcome.counter_policy), trace
        pi0 = _warm_start(spec, outcome.counter_policy, nxt)
        sigma = nxt

    raise MaxOuterIterationsExceeded(
        f"No fixed MIN policy after {bound} outer steps",
        bound=bound, lambdas=trace.lambdas,
    )
