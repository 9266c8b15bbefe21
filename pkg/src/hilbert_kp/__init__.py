"""Weighted Hilbert-type bilinear forms, operator-norm bounds on sequence and
coefficient spaces, and numerical certification of the underlying proof
chain."""

from .errors import (
    AccuracyError,
    DegenerateInputError,
    DivergentTailError,
    DomainError,
    InsufficientTruncationError,
    InvalidInputError,
    ParameterError,
)
from .kernels import (
    KernelSpec,
    Variant,
    apply_operator,
    bilinear_form,
    kernel_value,
    row_sum_alpha,
)
from .kp import TaylorFunction, hilbert_apply, k1_embedding_bound, kp_norm
from .norms import (
    NormEstimate,
    SharpnessPoint,
    ascent_lower_bound,
    epsilon_family,
    epsilon_family_ratio,
    kp_ratio,
    kp_sharpness_bound,
    pushed_epsilon_family,
    theoretical_norm,
)
from .proof_checks import (
    CheckReport,
    ProofCase,
    alpha_schedule,
    check_bernoulli_steps,
    check_F_convex_max,
    check_ineq_I,
    check_ineq_II,
    check_logconvexity_f,
    check_logconvexity_g,
    check_midpoint_bound,
    check_monotone_in_x,
    check_scalar_constants,
    default_sweep,
)
from .quadrature import (
    F_of_y,
    I_of_epsilon,
    QuadratureResult,
    adaptive_integrate,
    beta_integral,
)
from .sequences import (
    ExponentPair,
    Sequence,
    conjugate,
    dual_align,
    kp_to_lp_isometry,
    lp_norm,
    lp_to_kp_isometry,
    power_tail_bound,
    read_sequence,
    write_sequence,
)

__version__ = "0.1.0"
