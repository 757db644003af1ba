"""One-player stochastic machinery: chains, policy iteration, critical graphs."""

from .chains import (
    ChainStructure,
    InvariantMeasure,
    chain_structure,
    final_classes,
    invariant_measure,
    support_graph,
)
from .howard import (
    EigenPair,
    NotWellPosed,
    PolicyEvaluation,
    evaluate_policy,
    howard_iterations,
    howard_solve,
    improve_policy,
    lemma_eigenvalue,
)
from .critical import CriticalGraphReport, critical_graph, one_player_uniqueness

__all__ = [
    "ChainStructure",
    "CriticalGraphReport",
    "EigenPair",
    "InvariantMeasure",
    "NotWellPosed",
    "PolicyEvaluation",
    "chain_structure",
    "critical_graph",
    "evaluate_policy",
    "final_classes",
    "howard_iterations",
    "howard_solve",
    "improve_policy",
    "invariant_measure",
    "lemma_eigenvalue",
    "one_player_uniqueness",
    "support_graph",
]
