"""Generalized matrix inverses with residual certificates.

Computes the classical generalized inverses (Moore-Penrose, group, Drazin,
core, core-EP, (1,3)) and their weighted counterparts for pairs (A, W) of
square complex matrices, verifies every result against its defining
equation system, and ships a randomized verification harness plus a CLI.
"""

from .certificate import InverseCertificate
from .classic import (
    core,
    core_ep,
    core_ep_via_solver,
    core_via_solver,
    drazin,
    drazin_via_solver,
    group,
    index,
    one_three,
    pinv_via_solver,
    spectral_projection,
)
from .kernel import backend_name
from .matio import MatrixFormatError, load_matrix, save_matrix
from .matrix import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    is_invertible,
    is_nilpotent,
    mats_close,
    min_singular_value,
    pinv,
    power,
    rank,
)
from .solver import MatrixConstraint, SolveResult, affine, hermitian, solve_constraints
from .weighted import (
    CoreEPDecomposition,
    NumericalInconsistencyError,
    PolarCertificate,
    PreconditionViolation,
    WeightedPair,
    annihilator_equivalence,
    bc_inverse,
    block_triangular_core_ep,
    core_ep_decompose,
    polar_projection,
    w_core,
    w_core_ep_13w,
    w_core_ep_13w_candidates,
    w_core_ep_direct,
    w_core_ep_gdrazin,
    w_core_via_solver,
    w_gdrazin,
    w_one_three,
)

__all__ = [
    "DEFAULT_TOL",
    "CoreEPDecomposition",
    "InverseCertificate",
    "MatrixConstraint",
    "MatrixFormatError",
    "NumericalInconsistencyError",
    "PolarCertificate",
    "PreconditionViolation",
    "SolveResult",
    "ToleranceConfig",
    "WeightedPair",
    "adjoint",
    "affine",
    "annihilator_equivalence",
    "backend_name",
    "bc_inverse",
    "block_triangular_core_ep",
    "core",
    "core_ep",
    "core_ep_decompose",
    "core_ep_via_solver",
    "core_via_solver",
    "drazin",
    "drazin_via_solver",
    "group",
    "hermitian",
    "index",
    "is_invertible",
    "is_nilpotent",
    "load_matrix",
    "mats_close",
    "min_singular_value",
    "one_three",
    "pinv",
    "pinv_via_solver",
    "polar_projection",
    "power",
    "rank",
    "save_matrix",
    "solve_constraints",
    "spectral_projection",
    "w_core",
    "w_core_ep_13w",
    "w_core_ep_13w_candidates",
    "w_core_ep_direct",
    "w_core_ep_gdrazin",
    "w_core_via_solver",
    "w_gdrazin",
    "w_one_three",
]

__version__ = "0.1.0"
