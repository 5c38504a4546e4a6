"""Exact classification and generation of orthogonal polynomial sequences
for the Hahn divided-difference operator.

All arithmetic is over exact rationals (fractions.Fraction); identities
are checked with equality, never tolerances.
"""

from .qnum import (
    AdmissibilityError,
    HahnFrame,
    PearsonPair,
    Scalar,
    as_scalar,
    d_n,
    e_n,
    hahn_number,
    q_binomial,
    q_bracket,
    q_factorial,
    rodrigues_constant,
)
from .poly import (
    Poly,
    from_y_basis,
    leibniz_expand,
    op_D,
    op_D_monomial,
    op_D_star,
    op_L,
    op_L_star,
    to_y_basis,
    y_basis,
)
from .functional import (
    InsufficientMomentsError,
    MomentFunctional,
    derived_functional,
    dist_D,
    dist_D_star,
    dist_L,
    dist_L_star,
    left_multiply,
    pair,
    pearson_residual,
    solve_moments,
)
from .classical import (
    PRESETS,
    Preset,
    RecurrenceTable,
    RegularityError,
    RegularityReport,
    check_admissible,
    check_regular,
    derivative_sequence,
    get_preset,
    gram_matrix,
    hankel_determinant,
    phi_poly,
    psi_k,
    psi_poly,
    r_polynomial,
    recurrence,
    theta2,
)
from .rodrigues import RodriguesWitness, phi_product, rodrigues_rhs, verify_rodrigues

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
