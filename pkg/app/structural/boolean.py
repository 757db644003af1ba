"""Upper and lower Boolean abstractions of the payment-free operator.

Subsets of states are encoded as int bitmasks (bit j set <=> state j in the
subset); Boolean vectors at the API boundary are tuples of 0/1.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..game import GameSpec

BooleanVector = tuple[int, ...]


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        mask |= 1 << j
    return mask


def from_mask(mask: int, n: int) -> frozenset[int]:
    return frozenset(j for j in range(n) if mask >> j & 1)


def vector_to_mask(x: Sequence[int]) -> int:
    return to_mask(j for j, bit in enumerate(x) if bit)


def mask_to_vector(mask: int, n: int) -> BooleanVector:
    return tuple(mask >> j & 1 for j in range(n))


@dataclass(frozen=True)
class SupportStructure:
    """Support bitmask of every transition row, nested by state and MIN action."""
    n: int
    slots: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def upper(self, mask: int) -> int:
        """[F⁺(x)]_i = min_a max_b max_{j in supp} x_j."""
        out = 0
        for i, state_slots in enumerate(self.slots):
            if all(any(support & mask for support in slot) for slot in state_slots):
                out |= 1 << i
        return out

    def lower(self, mask: int) -> int:
        """[F⁻(x)]_i = min_a max_b min_{j in supp} x_j."""
        out = 0
        for i, state_slots in enumerate(self.slots):
            if all(any(support & ~mask == 0 for support in slot) for slot in state_slots):
                out |= 1 << i
        return out

    def in_minus(self, mask: int) -> bool:
        """I ∈ F⁻ iff F⁺(1_∁I) ≤ 1_∁I."""
        complement = self.full & ~mask
        return self.upper(complement) & mask == 0

    def in_plus(self, mask: int) -> bool:
        """J ∈ F⁺ iff F⁻(1_J) ≥ 1_J."""
        return self.lower(mask) & mask == mask


@lru_cache(maxsize=64)
def support_structure(spec: GameSpec) -> SupportStructure:
    """Support masks of spec; only strictly positive entries count."""
    supports = spec.supports
    slots = []
    for i, actions in enumerate(spec.min_actions):
        state_slots = []
        for a in range(len(actions)):
            state_slots.append(tuple(to_mask(supports[k].nonzero()[0]) for k in spec.slot(i, a)))
        slots.append(tuple(state_slots))
    return SupportStructure(spec.n, tuple(slots))


def _check_length(spec: GameSpec, x: Sequence[int]) -> None:
    if len(x) != spec.n:
        raise ValueError(f"Boolean vector has {len(x)} entries for {spec.n} states")


def boolean_upper(spec: GameSpec, x: Sequence[int]) -> BooleanVector:
    """Upper Boolean abstraction applied to a 0/1 vector."""
    _check_length(spec, x)
    return mask_to_vector(support_structure(spec).upper(vector_to_mask(x)), spec.n)


def boolean_lower(spec: GameSpec, x: Sequence[int]) -> BooleanVector:
    """Lower Boolean abstraction applied to a 0/1 vector."""
    _check_length(spec, x)
    return mask_to_vector(support_structure(spec).lower(vector_to_mask(x)), spec.n)
