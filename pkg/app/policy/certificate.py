"""Uniqueness certificate for the bias vector of T_r.

Every eigenvector of T_r is an eigenvector of some T_r^σ with the same
eigenvalue. Sweeping all MIN policies therefore covers the eigenvector set,
which is connected and contained in finitely many lines parallel to 1.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..config import Config, get_config
from ..errors import EnumerationCapExceeded, NoEigenpair
from ..game import GameSpec, PaymentVector, Policy, residual
from ..markov import EigenPair, NotWellPosed, critical_graph, howard_solve, one_player_uniqueness
from .._internal import get_logger

logger = get_logger(__name__)


class Verdict(str, Enum):
    UNIQUE = "UNIQUE"
    NOT_UNIQUE = "NOT_UNIQUE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True, eq=False)
class UniquenessCertificate:
    verdict: Verdict
    lam: float
    # One anchored representative per distinct line of eigenvectors found
    eigenvector_lines: list[np.ndarray]
    blocking_policies: list[Policy] = field(default_factory=list)
    witnesses: tuple[np.ndarray, np.ndarray] | None = None
    relevant_policies: list[Policy] = field(default_factory=list)
    tolerance: float = 1e-9

    def to_dict(self, spec: GameSpec) -> dict:
        def vector(v: np.ndarray) -> dict[str, float]:
            return {spec.states[i]: float(x) for i, x in enumerate(v)}

        return {
            "verdict": self.verdict.value,
            "lambda": self.lam,
            "eigenvector_lines": [vector(v) for v in self.eigenvector_lines],
            "blocking_policies": [spec.policy_labels(s) for s in self.blocking_policies],
            "witnesses": [vector(v) for v in self.witnesses] if self.witnesses else None,
            "relevant_policies": len(self.relevant_policies),
            "tolerance": self.tolerance,
        }


def _spread(v: np.ndarray) -> float:
    return float(v.max() - v.min())


def _lines(vectors: list[np.ndarray], line_tol: float) -> list[np.ndarray]:
    """Representatives of vectors grouped by 'differ by a constant'."""
    reps: list[np.ndarray] = []
    for v in vectors:
        if not any(_spread(v - rep) <= line_tol for rep in reps):
            reps.append(v)
    return reps


def certify_uniqueness(spec: GameSpec, r: PaymentVector, pair: EigenPair,
                       config: Config | None = None) -> UniquenessCertificate:
    """Decide whether the bias of T_r is unique up to an additive constant.

    For every MIN policy σ whose one-player game has eigenvalue pair.lam, the
    critical classes of T^σ are computed. σ with more than one class (or whose
    pattern enumeration hit the cap) block a UNIQUE verdict. The biases of the
    remaining σ that are also eigenvectors of T are grouped into lines.

    Returns:
        NOT_UNIQUE with two witnesses if two eigenvectors of T differ
        nonconstantly, else INCONCLUSIVE if some σ blocks, else UNIQUE

    Raises:
        NoEigenpair: pair fails the residual check against T
        EnumerationCapExceeded: |Σ| above policy_cap
    """
    config = config or get_config()
    res = residual(spec, r, pair.lam, pair.bias)
    if res > config.tol:
        raise NoEigenpair(f"Not an eigenpair of T (residual {res:.3e})", residual=res)
    count = spec.policy_count
    if count > config.policy_cap:
        raise EnumerationCapExceeded(
            f"{count} MIN policies exceed cap {config.policy_cap}",
            count=count, cap=config.policy_cap,
        )

    passing = [pair.bias - pair.bias[pair.anchor]]
    relevant: list[Policy] = []
    blocking: list[Policy] = []
    for sigma in spec.policies():
        outcome = howard_solve(spec, r, sigma, config=config)
        if isinstance(outcome, NotWellPosed) or abs(outcome.lam - pair.lam) > config.tol:
            continue
        relevant.append(sigma)
        report = critical_graph(spec, r, sigma, outcome, config)
        if not one_player_uniqueness(report) or not report.exhaustive:
            blocking.append(sigma)
        if residual(spec, r, pair.lam, outcome.bias) <= config.tol:
            passing.append(outcome.bias - outcome.bias[pair.anchor])

    lines = _lines(passing, config.line_tol)
    if len(lines) > 1:
        verdict = Verdict.NOT_UNIQUE
        witnesses = (lines[0], lines[1])
    elif blocking:
        verdict = Verdict.INCONCLUSIVE
        witnesses = None
        logger.warning(f"Uniqueness inconclusive: {len(blocking)} policies with several critical classes")
    else:
        verdict = Verdict.UNIQUE
        witnesses = None

    logger.info(f"Certificate {verdict.value}: {len(relevant)} relevant policies, {len(lines)} lines")
    return UniquenessCertificate(
        verdict, pair.lam, lines, blocking, witnesses, relevant, config.tol,
    )
