"""Module structure: Hom spaces, Loewy series, hearts, endomorphism
algebras, projective covers, Cartan matrices, blocks and structural checks."""

from .algebra import (
    AlgebraError,
    MatrixAlgebra,
    Summand,
    algebra_radical,
    brute_force_radical,
    endomorphism_algebra,
    indecomposable_summands,
    is_indecomposable,
    trace_form_radical,
)
from .checks import (
    CMultRow,
    HeadSplit,
    KMUReport,
    LLVerdict,
    c_multiplicativity,
    check_llprop,
    kmu_check,
    omega,
    try_split_by_heads,
)
from .hom import (
    HomBasis,
    LoewyData,
    head_multiplicities,
    heart,
    hom_space,
    loewy,
    loewy_length,
    radical,
    socle,
    socle_series,
)
from .pims import (
    PIM,
    BlockPartition,
    CartanMatrix,
    CoverNotFound,
    ProjectiveCovers,
    block_partition,
    c_invariant,
    cartan_matrix,
    projective_cover,
)

__all__ = [
    "AlgebraError",
    "MatrixAlgebra",
    "Summand",
    "algebra_radical",
    "brute_force_radical",
    "endomorphism_algebra",
    "indecomposable_summands",
    "is_indecomposable",
    "trace_form_radical",
    "CMultRow",
    "HeadSplit",
    "KMUReport",
    "LLVerdict",
    "c_multiplicativity",
    "check_llprop",
    "kmu_check",
    "omega",
    "try_split_by_heads",
    "HomBasis",
    "LoewyData",
    "head_multiplicities",
    "heart",
    "hom_space",
    "loewy",
    "loewy_length",
    "radical",
    "socle",
    "socle_series",
    "PIM",
    "BlockPartition",
    "CartanMatrix",
    "CoverNotFound",
    "ProjectiveCovers",
    "block_partition",
    "c_invariant",
    "cartan_matrix",
    "projective_cover",
]
