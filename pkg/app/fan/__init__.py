"""Exploration of the payment parameter space."""

from .slices import AffineSlice, state_axis_slice
from .fixtures import (
    decoupled_game,
    example_fixture,
    example_game,
    example_payment,
    example_raw,
    example_slice,
)
from .explorer import (
    FAILED,
    NOT_WELL_POSED,
    BoundaryEdge,
    CellMap,
    SampleRecord,
    classify_sample,
    detect_boundaries,
    explore_slice,
)
from .cells import AffineMean, BoundaryLine, circuit_means, exact_deterministic_cells_2d

__all__ = [
    "FAILED",
    "NOT_WELL_POSED",
    "AffineMean",
    "AffineSlice",
    "BoundaryEdge",
    "BoundaryLine",
    "CellMap",
    "SampleRecord",
    "circuit_means",
    "classify_sample",
    "decoupled_game",
    "detect_boundaries",
    "example_fixture",
    "example_game",
    "example_payment",
    "example_raw",
    "example_slice",
    "exact_deterministic_cells_2d",
    "explore_slice",
]
