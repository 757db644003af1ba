"""Command handlers: run the solver for one CLI invocation.

Each handler takes the validated game (None for standalone commands) and the
RunConfig, and returns the raw result consumed by the matching formatter.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError, UnknownIdentifier
from ..fan import AffineSlice, CellMap, example_fixture, exact_deterministic_cells_2d, explore_slice, state_axis_slice
from ..fan.cells import BoundaryLine
from ..game import GameSpec, PaymentVector, Policy, perturb_by_state, value_iterate, ValueIteration
from ..markov import EigenPair, NotWellPosed
from ..maxplus import deterministic_matrix, eigenvalue_is_rho, maximal_circuit_mean
from ..policy import IterationTrace, UniquenessCertificate, certify_uniqueness, hoffman_karp
from ..structural import GaloisReport, structural_verdict
from .._internal import get_logger
from ._internal.run_config import RunConfig

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Solution:
    payments: PaymentVector
    pair: EigenPair
    trace: IterationTrace
    certificate: UniquenessCertificate | None = None
    # (rho, eigenvalue_is_rho) for deterministic games
    tropical: tuple[float, bool] | None = None


def payments(spec: GameSpec, run: RunConfig) -> PaymentVector:
    """Game payments, shifted per state by --g when given."""
    r = spec.default_payments()
    g = getattr(run.args, "g", None)
    if g is None:
        return r
    if len(g) != spec.n:
        raise InputError(f"--g needs {spec.n} values, got {len(g)}", expected=spec.n)
    return perturb_by_state(spec, r, np.array(g, dtype=np.float64))


def start_policy(spec: GameSpec, run: RunConfig) -> Policy:
    """First action everywhere, or a seeded random policy with --random-start."""
    if not getattr(run.args, "random_start", False):
        return spec.first_policy()
    rng = np.random.default_rng(run.config.seed)
    return Policy(tuple(int(rng.integers(len(actions))) for actions in spec.min_actions))


def _solve(spec: GameSpec, run: RunConfig) -> Solution | NotWellPosed:
    r = payments(spec, run)
    outcome, trace = hoffman_karp(spec, r, start_policy(spec, run), run.config)
    if isinstance(outcome, NotWellPosed):
        return outcome
    return Solution(r, outcome, trace)


def check_structure(spec: GameSpec, run: RunConfig) -> GaloisReport:
    return structural_verdict(spec, run.config)


def solve(spec: GameSpec, run: RunConfig) -> Solution | NotWellPosed:
    return _solve(spec, run)


def certify(spec: GameSpec, run: RunConfig) -> Solution | NotWellPosed:
    solution = _solve(spec, run)
    if isinstance(solution, NotWellPosed):
        return solution
    certificate = certify_uniqueness(spec, solution.payments, solution.pair, run.config)
    return Solution(solution.payments, solution.pair, solution.trace, certificate)


def policy_trace(spec: GameSpec, run: RunConfig) -> Solution | NotWellPosed:
    solution = _solve(spec, run)
    if isinstance(solution, NotWellPosed) or not spec.is_deterministic:
        return solution
    M = deterministic_matrix(spec, solution.payments, solution.trace.final_sigma)
    rho = float(maximal_circuit_mean(M))
    checked = eigenvalue_is_rho(M, solution.pair.lam, list(solution.pair.bias), run.config)
    return Solution(solution.payments, solution.pair, solution.trace, None, (rho, checked))


def iterate_values(spec: GameSpec, run: RunConfig) -> ValueIteration:
    return value_iterate(spec, payments(spec, run), run.args.k)


def slice_from_args(spec: GameSpec, run: RunConfig) -> AffineSlice:
    """State-axis slice through the (possibly --g shifted) payments."""
    axes = []
    for label in run.args.axes:
        if label not in spec.states:
            raise UnknownIdentifier(f"Unknown slice axis state '{label}'", state=label)
        axes.append(spec.state_index(label))
    lo, hi = run.args.box
    box = tuple((lo, hi) for _ in axes)
    return state_axis_slice(spec, payments(spec, run), tuple(axes), box, run.args.resolution)


def explore(spec: GameSpec, run: RunConfig) -> CellMap:
    return explore_slice(spec, slice_from_args(spec, run), run.anchor(spec), run.config)


def exact_cells(spec: GameSpec, run: RunConfig) -> tuple[AffineSlice, list[BoundaryLine]]:
    slice_ = slice_from_args(spec, run)
    return slice_, exact_deterministic_cells_2d(spec, slice_, run.config)


def example(spec: None, run: RunConfig) -> tuple[GameSpec, PaymentVector]:
    game, _ = example_fixture()
    return game, payments(game, run)
