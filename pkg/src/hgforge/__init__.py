"""Exact tools for finite commutative semihypergroups.

The central object is an n*n*n cube of rational coefficients whose
column (i, j, *) gives the probability distribution of the product of
states i and j.  The package validates such cubes, decides their
structural properties exactly, constructs them from an abelian group
and a probability measure, and recovers that unique pair back from a
cube that admits one.
"""

from .core import (
    DimensionMismatch,
    MeasureVector,
    RationalMatrix,
    StructureCube,
    ValidationError,
    Violation,
    convolve_measures,
    left_matrix,
    point_mass,
    rat,
    right_matrix,
    validate_cube,
    validate_measure,
)
from .checks import (
    ConditionAReport,
    PropertyReport,
    Witness,
    check_corollaries,
    is_associative_bruteforce,
    is_associative_matrix,
    is_commutative,
    satisfies_condition_A,
)
from .groups import (
    CayleyTable,
    InvalidTable,
    InvariantFactors,
    PermutationRep,
    canonical_form,
    cayley_table,
    enumerate_abelian_groups,
    regular_representation,
    verify_group_axioms,
)
from .derivation import (
    DegeneracyVerdict,
    MixtureMatrix,
    degeneracy_check,
    derive_cube,
    mixture_matrix,
)
from .recovery import (
    ExtractionResult,
    InconsistentExpansion,
    RecoveryResult,
    extract_group_by_value,
    recover,
    recover_measure_from_A1,
)
from .formats import (
    FormatError,
    load_cube,
    load_group,
    load_measure,
    write_document,
)
from .sampling import random_measure, random_nondegenerate_measure

__version__ = "0.1.0"

__all__ = [
    "CayleyTable",
    "ConditionAReport",
    "DegeneracyVerdict",
    "DimensionMismatch",
    "ExtractionResult",
    "FormatError",
    "InconsistentExpansion",
    "InvalidTable",
    "InvariantFactors",
    "MeasureVector",
    "MixtureMatrix",
    "PermutationRep",
    "PropertyReport",
    "RationalMatrix",
    "RecoveryResult",
    "StructureCube",
    "ValidationError",
    "Violation",
    "Witness",
    "canonical_form",
    "cayley_table",
    "check_corollaries",
    "convolve_measures",
    "degeneracy_check",
    "derive_cube",
    "enumerate_abelian_groups",
    "extract_group_by_value",
    "is_associative_bruteforce",
    "is_associative_matrix",
    "is_commutative",
    "left_matrix",
    "load_cube",
    "load_group",
    "load_measure",
    "mixture_matrix",
    "point_mass",
    "random_measure",
    "random_nondegenerate_measure",
    "rat",
    "recover",
    "recover_measure_from_A1",
    "regular_representation",
    "right_matrix",
    "satisfies_condition_A",
    "validate_cube",
    "validate_measure",
    "verify_group_axioms",
    "write_document",
]
