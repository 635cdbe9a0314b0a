"""Cohomology of truncated (twisted) current algebras, with the matching
q-series predictions and affine constant-term identities."""
from __future__ import annotations

from .chevalley import (
    ChevalleyAlgebra,
    EigenData,
    build_chevalley,
    eigenspaces,
    invariant_trace_power,
    principal_sl2,
    twisted_exponents,
)
from .cohomology import (
    CohomologyTable,
    build_complex,
    coefficient_cochain,
    cohomology_dims,
    is_cocycle,
    j_twisted_cocycle,
    relative_cohomology_dims,
    superpoly_slice_dims,
    weighted_euler,
)
from .constterm import (
    build_SN,
    euler_cross_check,
    finite_macdonald_lhs,
    finite_macdonald_rhs,
    lhs_constant_term,
    rhs_binomial_form,
    rhs_theorem_form,
)
from .folding import fold, parse_cycles, validate_automorphism
from .graded import (
    GradedLie,
    build_deformed,
    build_iwahori_nilpotent_quotient,
    build_polynomial_quotient,
    build_truncated,
)
from .qseries import (
    BiPoly,
    LaurentQ,
    predict_nilpotent,
    predict_superpoly,
    predict_truncated,
    q_binomial,
    shifted_q_binomial,
)
from .rootdata import CartanType, build_root_system, exponents, weyl_order

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "build_chevalley",
    "build_complex",
    "build_deformed",
    "build_iwahori_nilpotent_quotient",
    "build_polynomial_quotient",
    "build_root_system",
    "build_SN",
    "build_truncated",
    "CartanType",
    "ChevalleyAlgebra",
    "coefficient_cochain",
    "cohomology_dims",
    "CohomologyTable",
    "EigenData",
    "eigenspaces",
    "euler_cross_check",
    "exponents",
    "finite_macdonald_lhs",
    "finite_macdonald_rhs",
    "fold",
    "GradedLie",
    "invariant_trace_power",
    "is_cocycle",
    "j_twisted_cocycle",
    "LaurentQ",
    "lhs_constant_term",
    "parse_cycles",
    "predict_nilpotent",
    "predict_superpoly",
    "predict_truncated",
    "principal_sl2",
    "q_binomial",
    "relative_cohomology_dims",
    "rhs_binomial_form",
    "rhs_theorem_form",
    "shifted_q_binomial",
    "superpoly_slice_dims",
    "twisted_exponents",
    "validate_automorphism",
    "weighted_euler",
    "weyl_order",
]
