"""Exact integer lattice analysis of torus-quotient presentations.

Given a d x n integer matrix presenting a surjection Z^n -> Z^d, this
package computes its kernel matrix, classifies the singularities of the
generic GIT quotient it presents, re-presents it so that the quotient
acquires only terminal singularities, and decides whether a projective
crepant resolution exists.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .analysis import (
    CODIM2_SINGULAR,
    SMOOTH,
    TERMINAL_QUOTIENT,
    Classification,
    CrepantDecision,
    HyperplaneSet,
    StratumReport,
    WeylGroup,
    classify,
    crepant_resolution_exists,
    hyperplane_normals,
    is_codim2_witness,
    is_generic,
    sample_generic,
    stratify,
    weyl_group,
)
from .gale import ExactnessCertificate, GalePair, cokernel_matrix, gale_dual, verify_exact
from .intlinalg import (
    HNFResult,
    IntMatrix,
    SNFDecomposition,
    column_lattice_canonical,
    hnf,
    is_lattice_surjection,
    is_unimodular,
    kernel_basis,
    maximal_minors,
    row_primitive_part,
    rows_match_up_to_permutation,
    snf,
)
from .terminalize import (
    DIRECT,
    ITERATED,
    ExpansionForm,
    ExpansionStep,
    Primitivization,
    Terminalization,
    expansion_normal_form,
    primitivize_rows,
    step_expand,
    terminalize,
)

__all__ = [
    "__version__",
    "IntMatrix",
    "HNFResult",
    "SNFDecomposition",
    "hnf",
    "snf",
    "kernel_basis",
    "is_lattice_surjection",
    "is_unimodular",
    "maximal_minors",
    "row_primitive_part",
    "column_lattice_canonical",
    "rows_match_up_to_permutation",
    "GalePair",
    "ExactnessCertificate",
    "gale_dual",
    "cokernel_matrix",
    "verify_exact",
    "DIRECT",
    "ITERATED",
    "ExpansionForm",
    "ExpansionStep",
    "Primitivization",
    "Terminalization",
    "expansion_normal_form",
    "step_expand",
    "primitivize_rows",
    "terminalize",
    "SMOOTH",
    "TERMINAL_QUOTIENT",
    "CODIM2_SINGULAR",
    "Classification",
    "CrepantDecision",
    "WeylGroup",
    "HyperplaneSet",
    "StratumReport",
    "is_codim2_witness",
    "classify",
    "crepant_resolution_exists",
    "weyl_group",
    "hyperplane_normals",
    "is_generic",
    "sample_generic",
    "stratify",
]
