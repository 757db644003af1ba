"""Max-plus spectral theory for deterministic games."""

from .matrix import NEG_INF, MaxPlusMatrix, is_finite
from .circuits import (
    CircuitMeanReport,
    circuit_mean,
    critical_analysis,
    eigenvalue_is_rho,
    elementary_circuits,
    maximal_circuit_mean,
    tropical_eigenvectors,
)
from .deterministic import deterministic_arcs, deterministic_matrix, successor

__all__ = [
    "NEG_INF",
    "CircuitMeanReport",
    "MaxPlusMatrix",
    "circuit_mean",
    "critical_analysis",
    "deterministic_arcs",
    "deterministic_matrix",
    "eigenvalue_is_rho",
    "elementary_circuits",
    "is_finite",
    "maximal_circuit_mean",
    "successor",
    "tropical_eigenvectors",
]
