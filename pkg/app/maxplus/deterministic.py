"""Max-plus matrices of deterministic games under a fixed MIN policy."""

import numpy as np

from ..errors import NotDeterministic
from ..game import GameSpec, PaymentVector, Policy
from .matrix import NEG_INF, MaxPlusMatrix


def _require_deterministic(spec: GameSpec) -> None:
    if not spec.is_deterministic:
        raise NotDeterministic("Game has a transition row that is not a unit vector")


def successor(spec: GameSpec, k: int) -> int:
    """Target state of a deterministic transition key."""
    return int(np.argmax(spec.transition[k]))


def deterministic_arcs(spec: GameSpec, sigma: Policy) -> list[tuple[int, int, int]]:
    """(i, j, key) for every MAX action available under sigma; depends on transitions only."""
    _require_deterministic(spec)
    spec.check_policy(sigma)
    return [
        (i, successor(spec, k), k)
        for i, a in enumerate(sigma.choice)
        for k in spec.slot(i, a)
    ]


def deterministic_matrix(spec: GameSpec, r: PaymentVector, sigma: Policy) -> MaxPlusMatrix:
    """M^σ_ij = max{ r_i^{σ(i)b} : P_ij^{σ(i)b} = 1 }, −∞ when no MAX action leads to j.

    Raises:
        NotDeterministic: some transition row is not a unit vector
    """
    rows = [[NEG_INF] * spec.n for _ in range(spec.n)]
    for i, j, k in deterministic_arcs(spec, sigma):
        rows[i][j] = max(rows[i][j], float(r.values[k]))
    return MaxPlusMatrix.from_rows(rows)
