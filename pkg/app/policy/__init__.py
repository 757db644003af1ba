"""Two-player policy iteration and the uniqueness certificate."""

from .hoffman_karp import IterationTrace, OuterStep, hoffman_karp, improve_min_policy
from .certificate import UniquenessCertificate, Verdict, certify_uniqueness
from ..game import residual as residual_check

__all__ = [
    "IterationTrace",
    "OuterStep",
    "UniquenessCertificate",
    "Verdict",
    "certify_uniqueness",
    "hoffman_karp",
    "improve_min_policy",
    "residual_check",
]
