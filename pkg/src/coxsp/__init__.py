"""Coxeter groups, gradient-S_p diagnostics, Hecke algebras and Schatten norms."""

from .coxeter import (
    INF,
    IDENTITY,
    BallCapExceeded,
    CayleyBall,
    CoxeterError,
    CoxeterSystem,
    GroupElement,
    ParseError,
    ball_enumerate,
    cayley_ball,
    inverse,
    m_reduce,
    multiply,
    parse_system,
)
from .diagram import (
    ParityPath,
    Verdict,
    cliques,
    decide_gradient_sp,
    has_cyclic_parity_path,
    hecke_interface_set,
    is_hyperbolic_right_angled,
    is_parity_path,
    is_small_at_infinity,
    to_dot,
)
from .gamma import (
    GammaTable,
    check_shifting_identity,
    gamma,
    gamma_lp_norm,
    gamma_table,
    intertwiner_set,
    tilde_gamma_table,
)
from .hecke import (
    HeckeElement,
    HeckeParams,
    hecke_adjoint,
    hecke_multiply,
    hecke_operator_matrix,
    hecke_s2_norm,
    hecke_trace,
    psi_hecke,
)
from .lengths import (
    LengthSpec,
    evaluate,
    is_finite_parabolic,
    is_proper_indicator,
    odd_components,
)
from .spectral import (
    TruncatedOperator,
    carre_du_champ_gram,
    coefficient_matrix,
    convolution_kernel_check,
    hadamard_tensor,
    psi_group_matrix,
    riesz_isometry_check,
    schatten_norm,
    spectral_gap_check,
)
from .surds import Surd

__version__ = "0.1.0"
