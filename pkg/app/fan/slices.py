"""Affine slices of the payment space."""

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..errors import InvalidSlice
from ..game import GameSpec, PaymentVector, offset_payments


@dataclass(frozen=True, eq=False)
class AffineSlice:
    """r(t) = base + Σ_d t_d · directions[d], with t_d sampled on box[d]."""
    base: PaymentVector
    directions: tuple[PaymentVector, ...]
    box: tuple[tuple[float, float], ...]
    resolution: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d = len(self.directions)
        if d == 0:
            raise InvalidSlice("Slice needs at least one direction")
        if len(self.box) != d:
            raise InvalidSlice(f"Box has {len(self.box)} intervals for {d} directions")
        if self.resolution < 2:
            raise InvalidSlice(f"Resolution must be at least 2, got {self.resolution}")
        for lo, hi in self.box:
            if not lo < hi:
                raise InvalidSlice(f"Empty sampling interval [{lo}, {hi}]")
        q = len(self.base)
        if any(len(direction) != q for direction in self.directions):
            raise InvalidSlice(f"Directions must have {q} entries like the base payment")
        basis = np.vstack([direction.values for direction in self.directions])
        if np.linalg.matrix_rank(basis) < d:
            raise InvalidSlice("Slice directions are linearly dependent")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"t{k}" for k in range(d)))

    @property
    def dim(self) -> int:
        return len(self.directions)

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, self.resolution) for lo, hi in self.box]

    def grid(self) -> Iterator[tuple[tuple[int, ...], tuple[float, ...]]]:
        """(grid index, coordinates) in lexicographic index order."""
        axes = self.axes()
        for index in itertools.product(range(self.resolution), repeat=self.dim):
            yield index, tuple(float(axes[d][k]) for d, k in enumerate(index))

    def payment_at(self, coords) -> PaymentVector:
        values = self.base.values.copy()
        for t, direction in zip(coords, self.directions):
            values = values + t * direction.values
        return PaymentVector(values)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple((hi - lo) / (self.resolution - 1) for lo, hi in self.box)


def state_axis_slice(spec: GameSpec, base: PaymentVector, axes: tuple[int, ...],
                     box: tuple[tuple[float, float], ...], resolution: int) -> AffineSlice:
    """Slice whose direction d adds 1 to every payment of state axes[d].

    Raises:
        InvalidSlice: repeated or out-of-range state axes, or bad box/resolution
    """
    if len(set(axes)) != len(axes) or any(not 0 <= s < spec.n for s in axes):
        raise InvalidSlice(f"Invalid state axes {list(axes)}", axes=list(axes))
    directions = tuple(offset_payments(spec, np.eye(spec.n)[s]) for s in axes)
    labels = tuple(f"g{spec.states[s]}" for s in axes)
    return AffineSlice(base, directions, tuple(tuple(b) for b in box), resolution, labels)
