"""High-precision evaluation of S_nu(a) = sum_{n>=1} (a n^2 / 2)^{-nu} K_nu(a n^2)."""

from .errors import (
    BesselSumError,
    CancellationWarning,
    CoefficientUnavailableError,
    DomainError,
    PlanExhaustedError,
    PoleError,
    PrecisionError,
)
from .kernel import Polar, PrecisionContext
from .expansion import (
    ExpansionBreakdown,
    Params,
    TruncationPlan,
    algebraic_sum,
    algebraic_sum_direct,
    evaluate,
    exp_small_series,
    h_term,
    plan_truncation,
    remainder_terminant,
    stokes_multiplier,
)

__version__ = "0.1.0"
