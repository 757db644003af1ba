"""Critical graph of T^σ at an eigenvector.

The subdifferential of T^σ at u is, per state, the convex hull of the rows of
the MAX actions attaining the max. Its final graphs are enumerated through
support patterns: one nonempty subset of active actions per state, whose
union support is the support of a matrix in the relative interior of that
face.
"""

import itertools
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ..config import Config, get_config
from ..errors import NoEigenpair
from ..game import GameSpec, PaymentVector, Policy, reduce_min
from .._internal import get_logger
from .chains import final_classes
from .howard import EigenPair

logger = get_logger(__name__)


@dataclass(frozen=True)
class CriticalGraphReport:
    active_supports: tuple[tuple[int, ...], ...]
    critical_arcs: frozenset[tuple[int, int]]
    critical_nodes: frozenset[int]
    critical_classes: tuple[frozenset[int], ...]
    # False when the pattern cap forced the reduced enumeration; classes are then a lower bound
    exhaustive: bool = True

    def to_dict(self, spec: GameSpec, sigma: Policy) -> dict:
        return {
            "active_supports": {
                spec.states[i]: [spec.max_actions[i][sigma.choice[i]][b] for b in active]
                for i, active in enumerate(self.active_supports)
            },
            "critical_arcs": sorted([spec.states[i], spec.states[j]] for i, j in self.critical_arcs),
            "critical_classes": [sorted(spec.states[i] for i in c) for c in self.critical_classes],
            "exhaustive": self.exhaustive,
        }


def _union_masks(rows: list[np.ndarray]) -> list[int]:
    """Distinct supports of unions of nonempty subsets of rows, as bitmasks."""
    masks = [sum(1 << int(j) for j in np.flatnonzero(row > 0.0)) for row in rows]
    unions = set()
    for size in range(1, len(masks) + 1):
        for combo in itertools.combinations(masks, size):
            mask = 0
            for m in combo:
                mask |= m
            unions.add(mask)
    return sorted(unions)


def _final_arcs(pattern: tuple[int, ...]) -> set[tuple[int, int]]:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(pattern)))
    for i, mask in enumerate(pattern):
        graph.add_edges_from((i, j) for j in range(len(pattern)) if mask >> j & 1)
    arcs = set()
    for cls in final_classes(graph):
        arcs.update(graph.subgraph(cls).edges)
    return arcs


def _patterns(options: list[list[int]], maximal: tuple[int, ...],
              singles: list[list[int]], cap: int) -> tuple[list[tuple[int, ...]], bool]:
    count = 1
    for opts in options:
        count *= len(opts)
    if count <= cap:
        return list(itertools.product(*options)), True

    logger.warning(f"{count} support patterns exceed cap {cap}; using maximal pattern and singletons")
    patterns = [maximal]
    for i, masks in enumerate(singles):
        for mask in masks:
            patterns.append(maximal[:i] + (mask,) + maximal[i + 1:])
    return patterns, False


def critical_graph(spec: GameSpec, r: PaymentVector, sigma: Policy, pair: EigenPair,
                   config: Config | None = None) -> CriticalGraphReport:
    """Union of the final graphs of the matrices in ∂T^σ(u), and its classes.

    Raises:
        NoEigenpair: pair does not satisfy T^σ(u) = λ1 + u within tol
    """
    config = config or get_config()
    op = reduce_min(spec, r, sigma)
    u = np.asarray(pair.bias, dtype=np.float64)
    res = float(np.max(np.abs(op(u) - pair.lam - u)))
    if res > config.tol:
        raise NoEigenpair(
            f"Not an eigenpair of the one-player operator (residual {res:.3e})",
            sigma=list(sigma.choice), residual=res,
        )

    values = op.per_state(op.action_values(u))
    active = tuple(
        tuple(int(b) for b in np.flatnonzero(v >= v.max() - config.tie_tol))
        for v in values
    )
    rows = [[spec.transition[op.key(i, b)] for b in acts] for i, acts in enumerate(active)]
    options = [_union_masks(state_rows) for state_rows in rows]
    singles = [sorted({_union_masks([row])[0] for row in state_rows}) for state_rows in rows]
    maximal = tuple(_or_all(opts) for opts in options)

    patterns, exhaustive = _patterns(options, maximal, singles, config.pattern_cap)
    arcs = set()
    for pattern in patterns:
        arcs |= _final_arcs(pattern)

    graph = nx.DiGraph()
    graph.add_edges_from(arcs)
    classes = tuple(sorted(
        (frozenset(c) for c in nx.strongly_connected_components(graph)),
        key=min,
    ))
    logger.debug(f"Policy {sigma.choice}: {len(patterns)} patterns, {len(classes)} critical classes")
    return CriticalGraphReport(active, frozenset(arcs), frozenset(graph.nodes), classes, exhaustive)


def _or_all(masks: list[int]) -> int:
    result = 0
    for m in masks:
        result |= m
    return result


def one_player_uniqueness(report: CriticalGraphReport) -> bool:
    """Bias of T^σ unique up to a constant iff there is exactly one critical class."""
    return len(report.critical_classes) == 1
