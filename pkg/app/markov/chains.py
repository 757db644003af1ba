"""Final classes and invariant measures of stochastic matrices."""

from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy import linalg

from ..config import Config, get_config
from ..errors import NotStochastic, SingularSystem
from .._internal import get_logger

logger = get_logger(__name__)


def support_graph(P: np.ndarray) -> nx.DiGraph:
    """Directed graph with an arc i -> j whenever P_ij > 0."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(P.shape[0]))
    rows, cols = np.nonzero(P > 0.0)
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def final_classes(graph: nx.DiGraph) -> list[frozenset[int]]:
    """Strongly connected components without outgoing arcs, ordered by smallest node."""
    condensed = nx.condensation(graph)
    sinks = [
        frozenset(condensed.nodes[c]["members"])
        for c in condensed.nodes
        if condensed.out_degree(c) == 0
    ]
    return sorted(sinks, key=min)


@dataclass(frozen=True, eq=False)
class ChainStructure:
    matrix: np.ndarray
    final_classes: tuple[frozenset[int], ...]
    transient: frozenset[int]

    @property
    def recurrent(self) -> frozenset[int]:
        return frozenset().union(*self.final_classes)


@dataclass(frozen=True, eq=False)
class InvariantMeasure:
    """Stationary distribution of a final class, as a full-length vector zero off the class."""
    cls: frozenset[int]
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)


def _check_stochastic(P: np.ndarray, config: Config) -> np.ndarray:
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise NotStochastic(f"Expected a square matrix, got shape {P.shape}")
    if np.any(P < 0.0) or np.any(np.abs(P.sum(axis=1) - 1.0) > config.row_tol):
        raise NotStochastic("Rows must be nonnegative and sum to 1")
    return P


def chain_structure(P: np.ndarray, config: Config | None = None) -> ChainStructure:
    """Final classes (sink components of the support graph) and transient states.

    Raises:
        NotStochastic: rows not nonnegative or not summing to 1
    """
    config = config or get_config()
    P = _check_stochastic(P, config)
    classes = tuple(final_classes(support_graph(P)))
    recurrent = frozenset().union(*classes)
    transient = frozenset(range(P.shape[0])) - recurrent
    return ChainStructure(P, classes, transient)


def invariant_measure(P: np.ndarray, cls: frozenset[int], config: Config | None = None) -> InvariantMeasure:
    """Solve m P|_C = m, Σm = 1 on a final class C by a direct linear solve.

    Raises:
        SingularSystem: the solve fails or the residual exceeds measure_tol
    """
    config = config or get_config()
    P = np.asarray(P, dtype=np.float64)
    members = sorted(cls)
    sub = P[np.ix_(members, members)]
    if np.any(np.abs(sub.sum(axis=1) - 1.0) > config.row_tol):
        raise ValueError(f"States {members} do not form a closed class")

    size = len(members)
    system = (sub - np.eye(size)).T
    system[-1, :] = 1.0
    rhs = np.zeros(size)
    rhs[-1] = 1.0
    try:
        local = linalg.solve(system, rhs)
    except linalg.LinAlgError as e:
        raise SingularSystem(f"Invariant measure system is singular: {e}", cls=members) from None

    weights = np.zeros(P.shape[0])
    weights[members] = local
    residual = float(np.sum(np.abs(weights @ P - weights)))
    if residual > config.measure_tol or np.any(local < -config.measure_tol):
        raise SingularSystem(
            f"Invariant measure residual {residual:.3e} above {config.measure_tol}",
            cls=members, residual=residual,
        )
    weights[members] = np.clip(local, 0.0, None)
    weights /= weights.sum()
    return InvariantMeasure(frozenset(members), weights)
