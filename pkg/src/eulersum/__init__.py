"""High-precision alternating and quartic Euler sums, their closed forms, and checks."""

from .arith import ExactRational, bernoulli, binom_general, euler_poly_zero
from .eulersums import SumSpec, sum_colored, sum_li_pm, sum_li_quartic, sum_S
from .identities import (
    ChainStep,
    DivergentTermError,
    IdentityReport,
    TruncationError,
    bbb_check,
    bbb_closed,
    chain_check,
    eq1_check,
    kernel_check,
    lemma_check,
    lemma_value,
    ms_check,
    prop1_check,
    prop2_check,
    thm1_check,
    thm1_rhs,
    twist_check,
)
from .mahler import MahlerEstimate, TorusSampleConfig, mahler_identity_check, mahler_qmc
from .precision import BigComplex, BigReal, PrecisionContext, PrecisionError
from .special import beta_dirichlet, const_log2, const_pi, harmonic_shift, hurwitz_zeta, li_at_root, zeta_int

__version__ = "0.1.0"
