"""Maximal circuit mean, critical graph and tropical eigenvectors."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import networkx as nx

from ..config import Config, get_config
from ..errors import CircuitCapExceeded, NoCircuit
from .._internal import get_logger
from .matrix import NEG_INF, MaxPlusMatrix, Scalar, is_finite

logger = get_logger(__name__)


@dataclass(frozen=True)
class CircuitMeanReport:
    rho: Scalar
    critical_arcs: frozenset[tuple[int, int]]
    critical_nodes: frozenset[int]
    critical_classes: tuple[frozenset[int], ...]
    # Max-plus closure of M - rho (walks of length >= 1)
    closure: tuple[tuple[Scalar, ...], ...]


def maximal_circuit_mean(M: MaxPlusMatrix) -> Scalar:
    """ρ(M) by Karp's dynamic program over walk lengths.

    D_k(v) is the heaviest walk of exactly k arcs ending at v (from any start);
    ρ = max_v min_k (D_n(v) - D_k(v)) / (n - k) over v with D_n(v) finite.

    Raises:
        NoCircuit: the precedence graph is acyclic
    """
    n = M.n
    zero = Fraction(0) if M.exact else 0.0
    table = [[zero] * n]
    for _ in range(n):
        prev = table[-1]
        table.append([
            max(
                (prev[u] + M.entries[u][v] for u in range(n)
                 if is_finite(prev[u]) and is_finite(M.entries[u][v])),
                default=NEG_INF,
            )
            for v in range(n)
        ])

    best = None
    for v in range(n):
        last = table[n][v]
        if not is_finite(last):
            continue
        worst = min((last - table[k][v]) / (n - k) for k in range(n) if is_finite(table[k][v]))
        if best is None or worst > best:
            best = worst
    if best is None:
        raise NoCircuit("Precedence graph has no circuit")
    return best


def _closure(normalized: list[list[Scalar]]) -> list[list[Scalar]]:
    """Max-plus transitive closure A⁺ (Floyd-Warshall); A has no positive circuit."""
    n = len(normalized)
    closure = [row[:] for row in normalized]
    for k in range(n):
        row_k = closure[k]
        for i in range(n):
            c_ik = closure[i][k]
            if not is_finite(c_ik):
                continue
            row_i = closure[i]
            for j in range(n):
                c_kj = row_k[j]
                if is_finite(c_kj) and c_ik + c_kj > row_i[j]:
                    row_i[j] = c_ik + c_kj
    return closure


def _is_zero(value: Scalar, exact: bool, tol: float) -> bool:
    if not is_finite(value):
        return False
    return value == 0 if exact else abs(value) <= tol


def critical_analysis(M: MaxPlusMatrix, config: Config | None = None) -> CircuitMeanReport:
    """ρ(M), critical arcs/nodes and critical classes.

    Arc (i, j) is critical iff (M_ij - ρ) + closure_ji = 0; classes are the
    strongly connected components of the critical graph.

    Raises:
        NoCircuit: the precedence graph is acyclic
    """
    config = config or get_config()
    rho = maximal_circuit_mean(M)
    normalized = [[v - rho if is_finite(v) else NEG_INF for v in row] for row in M.entries]
    closure = _closure(normalized)

    arcs = frozenset(
        (i, j) for i, j in M.arcs()
        if is_finite(closure[j][i])
        and _is_zero(normalized[i][j] + closure[j][i], M.exact, config.tie_tol)
    )
    graph = nx.DiGraph()
    graph.add_edges_from(arcs)
    nodes = frozenset(graph.nodes)
    classes = tuple(sorted(
        (frozenset(c) for c in nx.strongly_connected_components(graph)),
        key=min,
    ))
    logger.debug(f"rho={rho}, {len(arcs)} critical arcs, {len(classes)} critical classes")
    return CircuitMeanReport(rho, arcs, nodes, classes, tuple(tuple(row) for row in closure))


def tropical_eigenvectors(M: MaxPlusMatrix, config: Config | None = None) -> list[list[Scalar]]:
    """One eigenvector per critical class: the closure column at the class's smallest node.

    Each u satisfies M ⊗ u = ρ + u; entries may be −∞.
    """
    report = critical_analysis(M, config)
    vectors = []
    for cls in report.critical_classes:
        j = min(cls)
        u = [report.closure[i][j] for i in range(M.n)]
        # closure_jj = 0 on a critical node; remove rounding noise
        u[j] = Fraction(0) if M.exact else 0.0
        vectors.append(u)
    return vectors


def eigenvalue_is_rho(M: MaxPlusMatrix, lam: Scalar, u: Sequence[Scalar], config: Config | None = None) -> bool:
    """True iff M ⊗ u = λ + u within tolerance for a finite u; then λ = ρ(M)."""
    config = config or get_config()
    if len(u) != M.n or not all(is_finite(x) for x in u):
        raise ValueError("Eigenvalue check needs a finite vector of matching size")
    product = M.otimes(u)
    if not all(is_finite(p) for p in product):
        return False
    if max(abs(p - lam - x) for p, x in zip(product, u)) > config.tol:
        return False
    rho = maximal_circuit_mean(M)
    assert abs(rho - lam) <= config.tol, f"finite eigenvector with eigenvalue {lam} but rho={rho}"
    return True


def elementary_circuits(M: MaxPlusMatrix, cap: int | None = None) -> Iterator[list[int]]:
    """Elementary circuits of the precedence graph (node lists, self-loops included).

    Raises:
        CircuitCapExceeded: more than cap circuits
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(M.n))
    graph.add_edges_from(M.arcs())
    for count, cycle in enumerate(nx.simple_cycles(graph), start=1):
        if cap is not None and count > cap:
            raise CircuitCapExceeded(f"More than {cap} elementary circuits", cap=cap)
        yield cycle


def circuit_mean(M: MaxPlusMatrix, cycle: Sequence[int]) -> Scalar:
    weight = sum(M.entries[cycle[t]][cycle[(t + 1) % len(cycle)]] for t in range(len(cycle)))
    return weight / len(cycle)
