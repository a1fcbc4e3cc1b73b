"""Exact cohomological invariants of small covers and real toric spaces.

An instance is a pair (simplicial complex, GF(2) characteristic matrix).
The package computes its mod-2, rational, and integral cohomology exactly,
classifies the matrix against the linear and boundary-of-simplex models,
and evaluates the seven-way equivalence between the pullback property,
torsion-freeness, vanishing first Steenrod squares, and Betti-number
identities.
"""

from .bier import bier_instance, bier_sphere, lambda_bier, table1_instance
from .charmap import (
    CharacteristicMatrix,
    CharMapError,
    OmegaDescriptor,
    PullbackClass,
    PullbackLabel,
    block_product,
    classify_pullback,
    classify_via_flips,
    lambda_boundary_simplex,
    omega_descriptors,
    ridge_flip_support,
    validate,
)
from .cover import (
    BettiTable,
    ConditionReport,
    Hypotheses,
    RealToricSpace,
    betti_table,
    evaluate_conditions,
    integral_cohomology,
    is_orientable_3d,
    mod2_betti,
    mu_profile,
    rational_betti,
)
from .errors import InputError, InternalConsistencyError, PropertyViolation
from .facering import (
    GradedRingBasis,
    RingClass,
    RingError,
    Sq1Witness,
    build_graded_basis,
    find_sq1_witness,
)
from .gf2 import (
    BitMatrix,
    BitVec,
    GF2Error,
    find_basis_change,
    kernel_basis,
    rank,
    row_space,
)
from .homology import (
    CohomologyProfile,
    FinAbGroup,
    coboundary_matrix,
    reduced_cohomology,
    smith_normal_form,
)
from .instancefile import InstanceFile, emit_instance, parse_instance
from .shelling import (
    Shelling,
    ShellingError,
    critical_generators,
    find_shelling,
    two_degree_concentration_check,
    verify_shelling,
)
from .simplicial import (
    FaceVector,
    SimplicialComplex,
    SimplicialError,
    boundary_of_simplex,
    cross_polytope_boundary,
    polygon,
)

__version__ = "0.1.0"
