"""Square matrices over the max-plus semiring ℝ ∪ {−∞}.

−∞ is float("-inf"), which saturates under addition with any finite float or
Fraction. Entries are either all floats or, in exact mode, Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidMatrix

NEG_INF = float("-inf")

Scalar = float | Fraction


def is_finite(value: Scalar) -> bool:
    return value != NEG_INF


def _entry(value, exact: bool) -> Scalar:
    if value == NEG_INF or value == "-inf":
        return NEG_INF
    if exact:
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class MaxPlusMatrix:
    """n×n max-plus matrix with no row identically −∞."""
    entries: tuple[tuple[Scalar, ...], ...]
    exact: bool = False

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], exact: bool = False) -> "MaxPlusMatrix":
        """Build from nested sequences; "-inf" strings and -inf floats are −∞.

        Raises:
            InvalidMatrix: not square, empty, or a row identically −∞
        """
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise InvalidMatrix("Max-plus matrix must be square and nonempty")
        entries = tuple(tuple(_entry(v, exact) for v in row) for row in rows)
        for i, row in enumerate(entries):
            if not any(is_finite(v) for v in row):
                raise InvalidMatrix(f"Row {i} is identically -inf", row=i)
        return cls(entries, exact)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs of the precedence graph (finite entries)."""
        return [(i, j) for i in range(self.n) for j in range(self.n) if is_finite(self.entries[i][j])]

    def shifted(self, c: Scalar) -> "MaxPlusMatrix":
        """M + c on finite entries."""
        return MaxPlusMatrix(
            tuple(tuple(v + c if is_finite(v) else NEG_INF for v in row) for row in self.entries),
            self.exact,
        )

    def otimes(self, u: Sequence[Scalar]) -> list[Scalar]:
        """Max-plus product M ⊗ u."""
        return [
            max((m + x for m, x in zip(row, u) if is_finite(m) and is_finite(x)), default=NEG_INF)
            for row in self.entries
        ]

    def to_json(self) -> list[list]:
        """Dense array with the string "-inf" as sentinel."""
        return [[float(v) if is_finite(v) else "-inf" for v in row] for row in self.entries]
