"""J-self-adjoint extensions of the Phillips symmetric operator.

Lattice shift model with exact geometric-tail defect vectors, the canonical
boundary triplet, the regular/degenerate extension catalog with its
spectrum dichotomy, stable C-symmetry solutions and similarity witnesses,
plus Krein-space linear algebra primitives and a verification CLI.
"""

from .krein import (
    IndefiniteSpace,
    SubspaceBasis,
    SubspaceClass,
    TransitionOperator,
    c_subspaces,
    canonical_projectors,
    classify_subspace,
    indefinite_inner,
    is_valid_transition,
    transition_to_c,
)
from .lattice import LatticeVector, Ray, materialize
from .model import (
    BlockOperator,
    DomainVector,
    FiberC,
    FiberSpace,
    FiberSymmetry,
    apply_cayley,
    apply_restricted_shift,
    apply_shift,
    apply_sstar,
    defect_vector,
    embed_defect,
    extensions_exist,
    make_fiber_c,
    make_fundamental_symmetry,
    r_mu,
)
from .triplet import (
    BoundaryBasis,
    Triplet,
    boundary_maps,
    canonical_boundary_basis,
    canonical_triplet,
    characteristic,
    green_residual,
    solve_boundary,
    weyl,
)
from .extensions import (
    Extension,
    KParams,
    SpectrumClass,
    adjoint_extension,
    apply_extension,
    classify_spectrum,
    domain_subspace,
    eigenvector_candidate,
    is_j_unitary,
    k_matrix,
    member_of_domain,
)
from .csym import (
    CSolution,
    CSymmetryReport,
    c_matrix,
    similarity_form_residual,
    similarity_witness,
    solve_general_c,
    solve_stable_c,
    scalar_system_residuals,
    verify_csymmetry,
)
from .tolerances import Tolerances, get_tolerances, set_tolerances

__version__ = "0.1.0"
