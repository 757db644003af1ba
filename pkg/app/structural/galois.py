"""Invariant-face families, the Galois connection (Φ, Φ*) and the structural verdict.

A payment-free operator has only trivial fixed points iff no nontrivial
I ∈ F⁻ is closed (Φ*(Φ(I)) = I). Since this only depends on transition
supports, the verdict decides solvability of T(u) = λ1 + u for every
payment vector at once.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from ..config import Config, get_config
from ..errors import IterationBudgetExceeded, NotInFamily, StateCapExceeded
from ..game import GameSpec, StateVector, recession_apply
from .._internal import get_logger
from .boolean import SupportStructure, from_mask, support_structure, to_mask

logger = get_logger(__name__)


class FamilySide(str, Enum):
    MINUS = "MINUS"
    PLUS = "PLUS"


class StructuralVerdict(str, Enum):
    SOLVABLE_FOR_ALL_PAYMENTS = "SOLVABLE_FOR_ALL_PAYMENTS"
    NOT_STRUCTURALLY_SOLVABLE = "NOT_STRUCTURALLY_SOLVABLE"


@dataclass(frozen=True)
class SubsetFamily:
    """F⁻ or F⁺ as a set of bitmasks."""
    members: frozenset[int]
    side: FamilySide
    n: int

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def subsets(self) -> list[frozenset[int]]:
        """Members as index sets, ordered by size then lexicographically."""
        return sorted((from_mask(m, self.n) for m in self.members), key=lambda s: (len(s), sorted(s)))

    def is_union_closed(self) -> bool:
        return all(a | b in self.members for a in self.members for b in self.members)


@dataclass(frozen=True, eq=False)
class Witness:
    """Approximate nontrivial fixed point of the recession operator."""
    closed_set: frozenset[int]
    x: StateVector
    residual: float
    iterations: int
    converged: bool

    @property
    def argmin(self) -> frozenset[int]:
        return frozenset(int(j) for j in np.flatnonzero(self.x <= self.x.min()))

    @property
    def argmin_equals_closed_set(self) -> bool:
        return self.argmin == self.closed_set


@dataclass(frozen=True, eq=False)
class GaloisReport:
    f_minus: SubsetFamily
    f_plus: SubsetFamily
    phi: dict[int, int]
    phi_star: dict[int, int]
    closed_nontrivial: list[int]
    verdict: StructuralVerdict
    witnesses: list[Witness] = field(default_factory=list)

    def closure(self, mask: int) -> int:
        """clo(I) = Φ*(Φ(I)) for I ∈ F⁻."""
        return self.phi_star[self.phi[mask]]

    def dual_closure(self, mask: int) -> int:
        """clo(J) = Φ(Φ*(J)) for J ∈ F⁺."""
        return self.phi[self.phi_star[mask]]

    @property
    def solvable(self) -> bool:
        return self.verdict is StructuralVerdict.SOLVABLE_FOR_ALL_PAYMENTS


def _check_cap(spec: GameSpec, config: Config) -> None:
    if spec.n > config.state_cap:
        raise StateCapExceeded(
            f"{spec.n} states exceed the subset enumeration cap of {config.state_cap}",
            states=spec.n, cap=config.state_cap,
        )


def compute_families(spec: GameSpec, config: Config | None = None) -> tuple[SubsetFamily, SubsetFamily]:
    """F⁻ and F⁺ by enumeration of all 2ⁿ subsets.

    Raises:
        StateCapExceeded: n above config.state_cap
    """
    config = config or get_config()
    _check_cap(spec, config)
    structure = support_structure(spec)
    minus = set()
    plus = set()
    for mask in range(1 << spec.n):
        if structure.in_minus(mask):
            minus.add(mask)
        if structure.in_plus(mask):
            plus.add(mask)
    logger.debug(f"Families: |F-|={len(minus)}, |F+|={len(plus)} over {1 << spec.n} subsets")
    return (
        SubsetFamily(frozenset(minus), FamilySide.MINUS, spec.n),
        SubsetFamily(frozenset(plus), FamilySide.PLUS, spec.n),
    )


def _phi_mask(structure: SupportStructure, mask: int) -> int:
    """Greatest J ∈ F⁺ inside ∁I: drop states whose lower abstraction is 0 until stable."""
    current = structure.full & ~mask
    while True:
        nxt = current & structure.lower(current)
        if nxt == current:
            return current
        current = nxt


def _phi_star_mask(structure: SupportStructure, mask: int) -> int:
    """Greatest I ∈ F⁻ inside ∁J: drop states whose upper abstraction of ∁I is 1."""
    current = structure.full & ~mask
    while True:
        nxt = current & ~structure.upper(structure.full & ~current)
        if nxt == current:
            return current
        current = nxt


def galois_phi(spec: GameSpec, subset: Iterable[int]) -> frozenset[int]:
    """Φ(I): the greatest element of F⁺ disjoint from I.

    Raises:
        NotInFamily: I is not in F⁻
    """
    structure = support_structure(spec)
    mask = to_mask(subset)
    if not structure.in_minus(mask):
        raise NotInFamily(f"Subset {sorted(from_mask(mask, spec.n))} is not in F-", side="MINUS")
    return from_mask(_phi_mask(structure, mask), spec.n)


def galois_phi_star(spec: GameSpec, subset: Iterable[int]) -> frozenset[int]:
    """Φ*(J): the greatest element of F⁻ disjoint from J.

    Raises:
        NotInFamily: J is not in F⁺
    """
    structure = support_structure(spec)
    mask = to_mask(subset)
    if not structure.in_plus(mask):
        raise NotInFamily(f"Subset {sorted(from_mask(mask, spec.n))} is not in F+", side="PLUS")
    return from_mask(_phi_star_mask(structure, mask), spec.n)


def nontrivial_fixed_point_witness(
    spec: GameSpec,
    subset: Iterable[int],
    config: Config | None = None,
) -> Witness:
    """Fixed point of T̂ with x = 0 on I and x = 1 on Φ(I), for a closed nontrivial I.

    Iterates T̂ from 1_{Φ(I)}; the sequence is nondecreasing and bounded by
    1_{∁I}, hence converges.

    Raises:
        IterationBudgetExceeded: budget spent before the residual reached witness_tol
            (carries the best iterate and its residual)
    """
    config = config or get_config()
    structure = support_structure(spec)
    mask = to_mask(subset)
    if not structure.in_minus(mask):
        raise NotInFamily(f"Subset {sorted(from_mask(mask, spec.n))} is not in F-", side="MINUS")
    phi = from_mask(_phi_mask(structure, mask), spec.n)
    if mask == 0 or mask == structure.full or not phi:
        raise NotInFamily("Witness needs a closed nontrivial subset of F-", side="MINUS")

    x = np.zeros(spec.n)
    x[list(phi)] = 1.0
    residual = float("inf")
    for iteration in range(1, config.witness_max_iter + 1):
        nxt = recession_apply(spec, x)
        residual = float(np.max(np.abs(nxt - x)))
        x = nxt
        if residual <= config.witness_tol:
            logger.debug(f"Witness for {sorted(from_mask(mask, spec.n))} converged in {iteration} steps")
            return Witness(from_mask(mask, spec.n), x, residual, iteration, True)

    logger.warning(f"Witness iteration budget exhausted, residual {residual:.3e}")
    raise IterationBudgetExceeded(
        f"Witness did not reach residual {config.witness_tol} in {config.witness_max_iter} steps",
        best=x, residual=residual,
    )


def structural_verdict(spec: GameSpec, config: Config | None = None) -> GaloisReport:
    """Decide solvability for all payments and attach witnesses when it fails."""
    config = config or get_config()
    f_minus, f_plus = compute_families(spec, config)
    structure = support_structure(spec)

    phi = {mask: _phi_mask(structure, mask) for mask in f_minus.members}
    phi_star = {mask: _phi_star_mask(structure, mask) for mask in f_plus.members}

    closed = sorted(
        (mask for mask in f_minus.members
         if mask not in (0, structure.full) and phi_star[phi[mask]] == mask),
        key=lambda m: (bin(m).count("1"), m),
    )
    verdict = (
        StructuralVerdict.NOT_STRUCTURALLY_SOLVABLE if closed
        else StructuralVerdict.SOLVABLE_FOR_ALL_PAYMENTS
    )

    witnesses = []
    for mask in closed:
        try:
            witnesses.append(nontrivial_fixed_point_witness(spec, from_mask(mask, spec.n), config))
        except IterationBudgetExceeded as e:
            witnesses.append(Witness(from_mask(mask, spec.n), e.best, e.residual, config.witness_max_iter, False))

    logger.info(f"Structural verdict: {verdict.value} ({len(closed)} closed nontrivial subsets)")
    return GaloisReport(f_minus, f_plus, phi, phi_star, closed, verdict, witnesses)
