"""Structural solvability from transition supports."""

from .boolean import (
    BooleanVector,
    boolean_lower,
    boolean_upper,
    from_mask,
    support_structure,
    to_mask,
)
from .galois import (
    FamilySide,
    GaloisReport,
    StructuralVerdict,
    SubsetFamily,
    Witness,
    compute_families,
    galois_phi,
    galois_phi_star,
    nontrivial_fixed_point_witness,
    structural_verdict,
)

__all__ = [
    "BooleanVector",
    "FamilySide",
    "GaloisReport",
    "StructuralVerdict",
    "SubsetFamily",
    "Witness",
    "boolean_lower",
    "boolean_upper",
    "compute_families",
    "from_mask",
    "galois_phi",
    "galois_phi_star",
    "nontrivial_fixed_point_witness",
    "structural_verdict",
    "support_structure",
    "to_mask",
]
