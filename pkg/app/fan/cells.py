"""Exact boundary candidates on 2-D slices of deterministic games.

For a deterministic game and a MIN policy σ, each circuit of the precedence
graph of M^σ, with one transition key chosen per arc, has a mean payment that
is affine in the slice coordinates. Cell boundaries of the slice lie on the
lines where two such means coincide.
"""

import itertools
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ..config import Config, get_config
from ..errors import CircuitCapExceeded, InvalidSlice
from ..game import GameSpec, Policy
from ..maxplus import deterministic_arcs
from .._internal import get_logger
from .slices import AffineSlice

logger = get_logger(__name__)


@dataclass(frozen=True)
class AffineMean:
    """Circuit mean c0 + c1·t1 + c2·t2 over the slice."""
    keys: tuple[int, ...]
    c0: float
    c1: float
    c2: float

    def at(self, t1: float, t2: float) -> float:
        return self.c0 + self.c1 * t1 + self.c2 * t2


@dataclass(frozen=True)
class BoundaryLine:
    """a·t1 + b·t2 = c with (a, b) a unit normal, first nonzero component positive."""
    a: float
    b: float
    c: float
    policies: tuple[Policy, ...]

    def crosses_box(self, box: tuple[tuple[float, float], ...]) -> bool:
        (x0, x1), (y0, y1) = box
        values = [self.a * x + self.b * y - self.c for x in (x0, x1) for y in (y0, y1)]
        return min(values) <= 0.0 <= max(values)

    def to_dict(self, spec: GameSpec) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "policies": [spec.policy_labels(s) for s in self.policies],
        }


def circuit_means(spec: GameSpec, slice_: AffineSlice, sigma: Policy, cap: int) -> list[AffineMean]:
    """Affine means of every key-labelled elementary circuit of M^σ.

    Raises:
        CircuitCapExceeded: more than cap circuits
    """
    parallel: dict[tuple[int, int], list[int]] = {}
    for i, j, k in deterministic_arcs(spec, sigma):
        parallel.setdefault((i, j), []).append(k)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(spec.n))
    graph.add_edges_from(parallel)

    base = slice_.base.values
    d1, d2 = (direction.values for direction in slice_.directions)
    means = []
    for cycle in nx.simple_cycles(graph):
        arcs = [(cycle[t], cycle[(t + 1) % len(cycle)]) for t in range(len(cycle))]
        for keys in itertools.product(*(parallel[arc] for arc in arcs)):
            if len(means) >= cap:
                raise CircuitCapExceeded(f"More than {cap} circuits for policy {sigma.choice}", cap=cap)
            idx = list(keys)
            length = len(idx)
            means.append(AffineMean(
                tuple(keys),
                float(base[idx].sum()) / length,
                float(d1[idx].sum()) / length,
                float(d2[idx].sum()) / length,
            ))
    return means


def _normalize(a: float, b: float, c: float) -> tuple[float, float, float]:
    norm = float(np.hypot(a, b))
    a, b, c = a / norm, b / norm, c / norm
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return a, b, c


def _equality_line(m: AffineMean, p: AffineMean, tol: float) -> tuple[float, float, float] | None:
    a, b, c = m.c1 - p.c1, m.c2 - p.c2, p.c0 - m.c0
    if np.hypot(a, b) <= tol:
        return None
    return _normalize(a, b, c)


def exact_deterministic_cells_2d(spec: GameSpec, slice_: AffineSlice,
                                 config: Config | None = None) -> list[BoundaryLine]:
    """Pairwise-equality lines of circuit means, for every MIN policy.

    The result is a superset of the cell boundaries of the fan within the
    slice; lines agreeing within line_tol are merged.

    Raises:
        NotDeterministic: some transition row is not a unit vector
        InvalidSlice: slice is not 2-dimensional
        CircuitCapExceeded: more than circuit_cap circuits for some policy
    """
    config = config or get_config()
    if slice_.dim != 2:
        raise InvalidSlice(f"Exact cells need a 2-dimensional slice, got {slice_.dim}")

    lines: list[tuple[tuple[float, float, float], list[Policy]]] = []
    for sigma in spec.policies():
        means = circuit_means(spec, slice_, sigma, config.circuit_cap)
        for m, p in itertools.combinations(means, 2):
            line = _equality_line(m, p, config.line_tol)
            if line is None:
                continue
            for known, policies in lines:
                if max(abs(x - y) for x, y in zip(known, line)) <= config.line_tol:
                    if sigma not in policies:
                        policies.append(sigma)
                    break
            else:
                lines.append((line, [sigma]))

    result = sorted(
        (BoundaryLine(a, b, c, tuple(policies)) for (a, b, c), policies in lines),
        key=lambda line: (line.a, line.b, line.c),
    )
    logger.info(f"{len(result)} candidate boundary lines over {spec.policy_count} policies")
    return result
