"""Reference values of S_nu(a) by direct summation, and the extracted quantity S-hat.

``S-hat = S_nu(a) - H(a; nu) - (algebraic sum)`` isolates the exponentially
small part of the sum.  It is what the asymptotic ``B_j``/``c_j`` series
should reproduce, so getting it right means carrying enough digits to absorb
the cancellation against the ``O(1/sqrt(a))`` leading terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernel
from .errors import DomainError, PlanExhaustedError, PrecisionError
from .expansion import Params, TruncationPlan, algebraic_sum, exp_small_series, h_term, plan_truncation
from .kernel import PrecisionContext

__all__ = ["OracleResult", "s_direct", "s_half_closed_form", "digits_needed", "s_hat", "error_table"]

TAIL_SAFETY = 2


@dataclass(frozen=True)
class OracleResult:
    """A directly summed value with its (heuristic) tail estimate."""

    value: object
    terms_used: int
    tail_bound: object


def _tail_estimate(params: Params, N: int, ctx: PrecisionContext):
    """Safety factor times the large-argument K tail summed over ``n > N``."""
    mp = ctx.mp
    nu = params.nu_value(ctx)
    a = params.a(ctx)
    re_a = mp.re(a)
    lead = TAIL_SAFETY * mp.sqrt(mp.pi / (2 * abs(a))) * abs((a / 2) ** (-nu))
    n1 = N + 1
    first = mp.mpf(n1) ** (-2 * nu - 1) * mp.exp(-re_a * n1 * n1)
    return lead * first / (1 - mp.exp(-re_a * (2 * n1 + 1)))


def s_direct(params: Params, ctx: PrecisionContext) -> OracleResult:
    """Sum ``(a n^2 / 2)^{-nu} K_nu(a n^2)`` until the tail is below ``10^{-digits-5}`` of the total."""
    mp = ctx.mp
    nu = params.nu_value(ctx)
    a = params.a(ctx)
    total = mp.zero
    n = 0
    while True:
        n += 1
        z = a * n * n
        total += (z / 2) ** (-nu) * kernel.bessel_k(nu, z, ctx)
        tail = _tail_estimate(params, n, ctx)
        if tail < ctx.mpf(10) ** (-ctx.digits - 5) * abs(total):
            return OracleResult(total, n, tail)


def s_half_closed_form(a, ctx: PrecisionContext):
    """``S_{1/2}(a) = (sqrt(pi)/a) sum e^{-a n^2} / n^2``, summed to working precision."""
    mp = ctx.mp
    a = ctx.num(a)
    total = mp.zero
    n = 0
    eps = ctx.eps
    while True:
        n += 1
        term = mp.exp(-a * n * n) / (n * n)
        total += term
        if abs(term) < eps * abs(total):
            break
    return mp.sqrt(mp.pi) / a * total


def _cancellation_digits(params: Params, ctx: PrecisionContext) -> int:
    mp = ctx.mp
    re_x1 = mp.re(mp.pi**2 / params.a(ctx))
    return int(mp.ceil(re_x1 / mp.log(10)))


def digits_needed(params: Params, ctx: PrecisionContext) -> int:
    """Working digits for S-hat: ``e^{-Re X_1}`` must survive subtraction of O(1) terms.

    At least 30 digits are kept beyond the cancellation, and never fewer than
    ``ctx.digits``.
    """
    return _cancellation_digits(params, ctx) + max(30, ctx.digits + 5)


def s_hat(params: Params, plans: Optional[Sequence[TruncationPlan]], ctx: PrecisionContext):
    """``S_nu(a) - H(a; nu) - algebraic sum`` at automatically raised precision.

    ``plans`` is accepted for symmetry with the expansion routines but the
    plans are rebuilt at the working precision.  Raises :class:`PrecisionError`
    if fewer than ``ctx.digits`` digits survive the cancellation.
    """
    mp_out = ctx.mp
    work = ctx.with_digits(digits_needed(params, ctx))
    mp = work.mp
    k_plans = max(len(plans) if plans else 0, 8)
    while True:
        work_plans = plan_truncation(params, k_plans, work)
        try:
            alg = algebraic_sum(params, work_plans, work)
            break
        except PlanExhaustedError:
            k_plans *= 2
    direct = s_direct(params, work).value
    h = h_term(params, work)
    value = direct - h - alg
    scale = max(abs(direct), abs(h), abs(alg))
    if value == 0 or scale / abs(value) > mp.mpf(10) ** (work.dps - ctx.digits):
        raise PrecisionError(
            f"S-hat cancels below {ctx.digits} significant digits at {work.dps} working digits"
        )
    return mp_out.mpc(value) if kernel.is_complex(value) else mp_out.mpf(value)


def error_table(params: Params, M_max: int, ctx: PrecisionContext, source: str = "auto") -> list:
    """``|asymptotic(M) - S-hat| / |S-hat|`` for ``M = 1..M_max``, keeping ``k = 1`` only."""
    if not params.on_stokes_line:
        raise DomainError("error_table needs arg a = 0")
    mp = ctx.mp
    ref = s_hat(params, None, ctx)
    plan = plan_truncation(params, 1, ctx)
    out = []
    for M in range(1, M_max + 1):
        approx = exp_small_series(params, plan, None, M, ctx, source)[0]
        out.append(abs(approx - ref) / abs(ref))
    return out
