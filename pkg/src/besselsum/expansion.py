"""Asymptotic evaluation of S_nu(a) = sum_{n>=1} (a n^2 / 2)^{-nu} K_nu(a n^2) as a -> 0.

The expansion has three parts:

* the residue term ``H(a; nu)`` (powers of ``a``, plus a logarithm when
  ``nu`` is an integer or ``nu - 1/4`` is);
* an algebraic double sum, one series in ``(a / 8 pi^2 k^2)^2`` per ``k``,
  each cut off at its optimal truncation index ``N_k``;
* exponentially small corrections ``e^{-X_k}`` with ``X_k = pi^2 k^2 / a``.

On the Stokes line ``arg a = 0`` the corrections are given by the ``B_j`` and
``c_j`` series (:func:`exp_small_series`).  Off the axis, and as a cross-check
on it, :func:`remainder_terminant` evaluates the same remainders through exact
terminant functions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import kernel
from .coefficients import CoefficientSet, build_coefficients, c_closed, c_generate
from .errors import CancellationWarning, CoefficientUnavailableError, DomainError, PlanExhaustedError
from .kernel import Polar, PrecisionContext
from .terminant import terminant_exact

__all__ = [
    "Params",
    "TruncationPlan",
    "ExpansionBreakdown",
    "to_fraction",
    "plan_truncation",
    "default_k_max",
    "h_term",
    "algebraic_sum",
    "algebraic_sum_direct",
    "series_term",
    "exp_small_series",
    "remainder_terminant",
    "evaluate",
    "stokes_multiplier",
    "stokes_erf_argument",
]

# near-branch inputs are flagged inside this distance of nu' = 0 or 1/4
BRANCH_WINDOW = Fraction(1, 10**6)


def to_fraction(x) -> Fraction:
    """Exact rational value of an int, float, decimal string, ``"p/q"`` or mpf."""
    if isinstance(x, Fraction):
        return x
    if hasattr(x, "_mpf_"):
        sign, man, exp, _ = x._mpf_
        if man == 0:
            return Fraction(0)
        value = Fraction(man) * (Fraction(2) ** exp)
        return -value if sign else value
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class Params:
    """Order ``nu >= 0`` and ``a = a_mod * exp(i * a_arg)`` with ``|a_arg| < pi/2``.

    Values are held exactly so they can be re-read at any precision.
    """

    nu: Fraction
    a_mod: Fraction
    a_arg: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "nu", to_fraction(self.nu))
        object.__setattr__(self, "a_mod", to_fraction(self.a_mod))
        object.__setattr__(self, "a_arg", to_fraction(self.a_arg))
        if self.nu < 0:
            raise DomainError(f"nu must be non-negative, got {self.nu}")
        if self.a_mod <= 0:
            raise DomainError(f"|a| must be positive, got {self.a_mod}")
        if abs(self.a_arg) >= Fraction(157079632679489661923, 10**20):
            raise DomainError(f"need |arg a| < pi/2, got {float(self.a_arg)}")

    @property
    def m(self) -> int:
        return math.floor(self.nu)

    @property
    def nu_prime(self) -> Fraction:
        return self.nu - self.m

    @property
    def on_stokes_line(self) -> bool:
        return self.a_arg == 0

    def nu_value(self, ctx: PrecisionContext):
        return ctx.mpf(self.nu)

    def theta(self, ctx: PrecisionContext):
        return ctx.mpf(self.a_arg)

    def a(self, ctx: PrecisionContext):
        """``a`` as ``mpf`` on the positive axis, ``mpc`` elsewhere."""
        mod = ctx.mpf(self.a_mod)
        if self.a_arg == 0:
            return mod
        return mod * ctx.mp.expj(ctx.mpf(self.a_arg))


@dataclass(frozen=True)
class TruncationPlan:
    """Optimal truncation of the ``k``-th algebraic series: ``|X_k| = 2 N_k + vartheta + alpha_k``."""

    k: int
    X: object
    N: int
    alpha: object
    vartheta: object

    @property
    def mu(self):
        return 2 * self.N + self.vartheta


def plan_truncation(params: Params, k_max: int, ctx: PrecisionContext) -> List[TruncationPlan]:
    mp = ctx.mp
    a = params.a(ctx)
    vartheta = -3 * params.nu_value(ctx)
    plans = []
    for k in range(1, k_max + 1):
        X = mp.pi**2 * k * k / a
        N = int(mp.nint((abs(X) - vartheta) / 2))
        plans.append(TruncationPlan(k, X, N, abs(X) - 2 * N - vartheta, vartheta))
    return plans


def default_k_max(params: Params, ctx: PrecisionContext) -> int:
    """First ``k`` whose exponential lies ``digits`` decades below ``e^{-X_1}``."""
    mp = ctx.mp
    a = params.a(ctx)
    re_x1 = mp.re(mp.pi**2 / a)
    limit = ctx.dps * mp.log(10)
    k = 1
    while re_x1 * (k * k - 1) <= limit:
        k += 1
    return k


def _h_n(n, nu, a, ctx):
    mp = ctx.mp
    return (-1) ** n / mp.factorial(n) * mp.gamma(nu - n) * mp.zeta(4 * nu - 4 * n) * (a / 2) ** (2 * n - 2 * nu)


def _h_term_generic(params: Params, ctx: PrecisionContext):
    mp = ctx.mp
    nu = params.nu_value(ctx)
    a = params.a(ctx)
    total = mp.fsum(_h_n(n, nu, a, ctx) for n in range(params.m + 1)) / 2
    total += mp.gamma(mp.mpf(1) / 4) * mp.gamma(mp.mpf(1) / 4 - nu) / (8 * mp.sqrt(a / 2))
    total += mp.pi / (4 * mp.sinpi(nu) * mp.gamma(1 + nu))
    return total


def h_term(params: Params, ctx: PrecisionContext):
    """Residue contribution ``H(a; nu)`` from the poles in ``Re s >= 0``.

    Integer ``nu`` (double pole at ``s = 0``) and ``nu - m = 1/4`` (double pole
    at ``s = 1/2``) have their own closed forms.  Inputs within
    ``BRANCH_WINDOW`` of either case use the generic form at doubled
    precision and emit a :class:`CancellationWarning`.
    """
    mp = ctx.mp
    m = params.m
    nu_p = params.nu_prime
    if nu_p == 0 or nu_p == Fraction(1, 4):
        nu = params.nu_value(ctx)
        a = params.a(ctx)
        quarter = mp.mpf(1) / 4
        partial = mp.fsum(_h_n(n, nu, a, ctx) for n in range(m)) / 2
        sign = (-1) ** m
        if nu_p == 0:
            log_part = (mp.euler - mp.digamma(m + 1)) / 2 + mp.log(a / (8 * mp.pi**2))
            return (
                partial
                + mp.gamma(quarter) * mp.gamma(quarter - nu) / (8 * mp.sqrt(a / 2))
                + sign * log_part / (2 * mp.factorial(m))
            )
        log_part = (mp.digamma(quarter) + mp.digamma(m + 1)) / 2 + 2 * mp.euler - mp.log(a / 2)
        return (
            partial
            + mp.pi / (4 * mp.sinpi(nu) * mp.gamma(1 + nu))
            + sign * mp.gamma(quarter) * log_part / (4 * mp.factorial(m) * mp.sqrt(a / 2))
        )
    dist = min(nu_p, abs(nu_p - Fraction(1, 4)), 1 - nu_p)
    if dist < BRANCH_WINDOW:
        warnings.warn(
            f"nu = {float(params.nu)} is within {float(dist):.1e} of a logarithmic case; "
            "evaluating the generic form at doubled precision",
            CancellationWarning,
            stacklevel=2,
        )
        work = ctx.with_digits(2 * ctx.digits)
        return ctx.num(_h_term_generic(params, work))
    return _h_term_generic(params, ctx)


class _TermSequence:
    """``(4n - 4nu)! / (n! (n - nu)!) (a / 8 pi^2)^{2n - 2nu}`` by forward recurrence."""

    def __init__(self, params: Params, ctx: PrecisionContext):
        mp = ctx.mp
        self.mp = mp
        self.nu = params.nu_value(ctx)
        self.u = params.a(ctx) / (8 * mp.pi**2)
        self.u2 = self.u * self.u
        self.n = params.m + 1
        self.value = self._direct(self.n)

    def _direct(self, n):
        mp, nu = self.mp, self.nu
        return mp.gamma(4 * n - 4 * nu + 1) / (mp.gamma(n + 1) * mp.gamma(n - nu + 1)) * self.u ** (2 * n - 2 * nu)

    def at(self, n: int):
        if n < self.n:
            self.n = n
            self.value = self._direct(n)
        while self.n < n:
            x = 4 * self.n - 4 * self.nu
            self.value *= (x + 1) * (x + 2) * (x + 3) * (x + 4) / ((self.n + 1) * (self.n + 1 - self.nu)) * self.u2
            self.n += 1
        return self.value


def series_term(params: Params, n: int, k: int, ctx: PrecisionContext):
    """Term ``n`` of the ``k``-th algebraic series, without the ``cos(pi nu)`` factor."""
    seq = _TermSequence(params, ctx)
    nu = params.nu_value(ctx)
    return seq.at(n) * ctx.mpf(k) ** (-(4 * n - 4 * nu) - 1)


def algebraic_sum(params: Params, plans: Sequence[TruncationPlan], ctx: PrecisionContext):
    """Hurwitz-regrouped algebraic sum.

    ``cos(pi nu) sum_p sum_{n=N_{p-1}}^{N_p - 1} A_n zeta(4n - 4nu + 1, p)``
    with ``N_0 = m + 1``.  Blocks are added until one falls below working
    precision; running out of plans first raises :class:`PlanExhaustedError`.
    """
    mp = ctx.mp
    cos = mp.cospi(params.nu_value(ctx))
    if cos == 0:
        return mp.zero
    nu = params.nu_value(ctx)
    seq = _TermSequence(params, ctx)
    bounds = [params.m + 1] + [p.N for p in plans]
    total = mp.zero
    eps = ctx.eps
    for p in range(1, len(bounds)):
        lo, hi = bounds[p - 1], bounds[p]
        if hi <= lo:
            continue
        if p > 1:
            lead = abs(seq.at(lo) * kernel.hurwitz_zeta(4 * lo - 4 * nu + 1, p, ctx))
            if lead * (hi - lo) <= eps * abs(total):
                return cos * total
        for n in range(lo, hi):
            total += seq.at(n) * kernel.hurwitz_zeta(4 * n - 4 * nu + 1, p, ctx)
    lo = bounds[-1]
    lead = abs(seq.at(lo) * kernel.hurwitz_zeta(4 * lo - 4 * nu + 1, len(bounds), ctx))
    if lead > eps * abs(total):
        raise PlanExhaustedError(f"{len(plans)} plans do not reach working precision; supply more")
    return cos * total


def algebraic_sum_direct(params: Params, plans: Sequence[TruncationPlan], ctx: PrecisionContext):
    """The same double sum in its original order, one ``k``-series at a time.

    Series ``k = 1 .. K`` (``K = len(plans) - 1``) are summed term by term.
    For ``k > K`` the terms with ``n < N_{K+1}`` are collected with
    ``zeta(., K+1)``; whatever lies beyond must be negligible.
    """
    mp = ctx.mp
    if len(plans) < 2:
        raise PlanExhaustedError("the direct form needs at least two plans")
    cos = mp.cospi(params.nu_value(ctx))
    if cos == 0:
        return mp.zero
    nu = params.nu_value(ctx)
    seq = _TermSequence(params, ctx)
    first = params.m + 1
    K = len(plans) - 1
    total = mp.zero
    for plan in plans[:K]:
        k = mp.mpf(plan.k)
        inner = mp.zero
        for n in range(first, plan.N):
            inner += seq.at(n) * k ** (-(4 * n - 4 * nu))
        total += inner / k
    tail = mp.zero
    last = plans[K].N
    for n in range(first, last):
        tail += seq.at(n) * kernel.hurwitz_zeta(4 * n - 4 * nu + 1, K + 1, ctx)
    total += tail
    lead = abs(seq.at(last) * kernel.hurwitz_zeta(4 * last - 4 * nu + 1, K + 2, ctx))
    if lead > ctx.eps * abs(total):
        raise PlanExhaustedError(f"{len(plans)} plans do not reach working precision; supply more")
    return cos * total


def _prefactor(params: Params, plan: TruncationPlan, ctx: PrecisionContext):
    """``2^{nu - 1/2} a^nu pi^{-2nu} e^{-X_k} k^{-1-2nu}``."""
    mp = ctx.mp
    nu = params.nu_value(ctx)
    a = params.a(ctx)
    return 2 ** (nu - mp.mpf(1) / 2) * a**nu / mp.pi ** (2 * nu) * mp.exp(-plan.X) * mp.mpf(plan.k) ** (-1 - 2 * nu)


def exp_small_series(
    params: Params,
    plans: Sequence[TruncationPlan],
    coeffs: Optional[Sequence[CoefficientSet]],
    M: int,
    ctx: PrecisionContext,
    source: str = "auto",
) -> list:
    """Per-``k`` exponentially small contributions on the Stokes line ``arg a = 0``.

    ``coeffs`` holds one :class:`CoefficientSet` per plan (built from each
    plan's ``alpha_k``); pass ``None`` to build them here with ``source``.
    """
    if not params.on_stokes_line:
        raise DomainError("exp_small_series is valid only for arg a = 0; use remainder_terminant")
    mp = ctx.mp
    nu = params.nu_value(ctx)
    cos, sin = mp.cospi(nu), mp.sinpi(nu)
    out = []
    for i, plan in enumerate(plans):
        X = plan.X
        if coeffs is None and cos == 0:
            # only the c_j survive, and they do not depend on alpha
            c = _c_values(nu, M, ctx, source)
            out.append(-_prefactor(params, plan, ctx) * sin * mp.fsum((-1) ** j * c[j] * X ** (-j) for j in range(M)))
            continue
        cs = coeffs[i] if coeffs is not None else build_coefficients(nu, plan.alpha, M, ctx, source)
        if cs.M < M:
            raise ValueError(f"coefficient set holds {cs.M} terms, need {M}")
        b_sum = mp.fsum((-1) ** j * cs.B[j] * X ** (-j) for j in range(M))
        c_sum = mp.fsum((-1) ** j * cs.c[j] * X ** (-j) for j in range(M))
        bracket = cos / mp.sqrt(2 * mp.pi * X) * b_sum - sin * c_sum
        out.append(_prefactor(params, plan, ctx) * bracket)
    return out


def remainder_terminant(
    params: Params,
    plan: TruncationPlan,
    M: int,
    ctx: PrecisionContext,
    c: Optional[Sequence] = None,
):
    """Remainder ``R_k(a; N_k)`` with the terminants evaluated exactly.

    ``c`` overrides the ``c_j(nu)`` values (default: stored closed forms, or
    the generator when ``M > 5``).  The result is ``R_k`` itself; its
    contribution to ``S_nu(a)`` is ``R_k / k``.  Valid for ``|arg a| < pi/2``.
    """
    mp = ctx.mp
    nu = params.nu_value(ctx)
    if c is None:
        c = build_coefficients(nu, plan.alpha, M, ctx).c if M > 0 else ()
    cos, sin = mp.cospi(nu), mp.sinpi(nu)
    X = plan.X
    r = abs(X)
    phi = -params.theta(ctx)
    phase = mp.expjpi(plan.vartheta)
    total = mp.zero
    for j in range(M):
        if cos == 0:
            bold_t = mp.zero
        else:
            order = plan.mu - j
            bold_t = (
                mp.exp(2 * X) * terminant_exact(order, Polar(r, phi), ctx)
                + (-1) ** j * phase * terminant_exact(order, Polar(r, phi + mp.pi), ctx)
                - mp.mpc(0, mp.mpf(1) / 2)
            )
        total += (-1) ** j * c[j] * X ** (-j) * (2 * cos * bold_t - sin)
    a = params.a(ctx)
    result = 2 ** (nu - mp.mpf(1) / 2) * (a / (mp.pi**2 * plan.k**2)) ** nu * mp.exp(-X) * total
    if params.on_stokes_line:
        return mp.re(result)
    return result


@dataclass(frozen=True)
class ExpansionBreakdown:
    """Parts of the asymptotic value; ``total`` is their sum.

    ``error_model`` is the size of the first omitted ``j``-term of the ``k = 1``
    exponential: a heuristic scale, not a bound.
    """

    h_term: object
    algebraic_sum: object
    exp_terms: tuple
    total: object
    error_model: object
    mode: str
    M: int
    k_max: int
    plans: tuple = field(repr=False, default=())


def _c_values(nu, M, ctx, source):
    if M <= 5 and source != "generated":
        return [c_closed(j, nu, ctx, printed=source == "printed") for j in range(M)]
    if source in ("closed", "printed"):
        raise CoefficientUnavailableError("closed forms are stored only for M <= 5")
    return c_generate(M, nu, ctx)


def _omitted_term(params, plan, M, ctx, source):
    mp = ctx.mp
    nu = params.nu_value(ctx)
    if mp.cospi(nu) == 0:
        c = _c_values(nu, M + 1, ctx, "auto" if M + 1 > 5 else source)
        return abs(_prefactor(params, plan, ctx) * c[M] * plan.X ** (-M))
    if M + 1 <= 5:
        cs = build_coefficients(nu, plan.alpha, M + 1, ctx, source)
    else:
        cs = build_coefficients(nu, plan.alpha, M + 1, ctx, "generated")
    X = plan.X
    term = mp.cospi(nu) / mp.sqrt(2 * mp.pi * X) * cs.B[M] - mp.sinpi(nu) * cs.c[M]
    return abs(_prefactor(params, plan, ctx) * term * X ** (-M))


def evaluate(
    params: Params,
    M: int,
    k_max: Optional[int],
    ctx: PrecisionContext,
    mode: str = "auto",
    source: str = "auto",
) -> ExpansionBreakdown:
    """Assemble the expansion of ``S_nu(a)`` with ``M`` terms per exponential.

    ``mode="theorem"`` uses the ``B_j``/``c_j`` series (``arg a = 0`` only),
    ``"terminant"`` uses :func:`remainder_terminant`; ``"auto"`` picks the
    former on the Stokes line and the latter off it.  ``k_max=None`` keeps
    every exponential down to working precision.
    """
    mp = ctx.mp
    if mode == "auto":
        mode = "theorem" if params.on_stokes_line else "terminant"
    if mode not in ("theorem", "terminant"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "theorem" and not params.on_stokes_line:
        raise DomainError("theorem mode requires arg a = 0")
    if k_max is None:
        k_max = default_k_max(params, ctx)

    n_plans = max(k_max, default_k_max(params, ctx)) + 2
    plans = plan_truncation(params, n_plans, ctx)
    h = h_term(params, ctx)
    alg = algebraic_sum(params, plans, ctx)

    used = plans[:k_max]
    if M == 0 or not used:
        exp_terms = [mp.zero] * len(used)
    elif mode == "theorem":
        exp_terms = exp_small_series(params, used, None, M, ctx, source)
    else:
        exp_terms = [remainder_terminant(params, p, M, ctx) / p.k for p in used]

    total = h + alg + mp.fsum(exp_terms)
    if used and M >= 0:
        err = _omitted_term(params, used[0], M, ctx, source)
    else:
        err = abs(_prefactor(params, plans[0], ctx))
    return ExpansionBreakdown(h, alg, tuple(exp_terms), total, err, mode, M, k_max, tuple(plans))


def stokes_erf_argument(params: Params, k: int, ctx: PrecisionContext):
    """``c(phi) (|X_k| / 2)^{1/2}`` at leading order, ``c(phi) = -theta``."""
    mp = ctx.mp
    x_abs = mp.pi**2 * k * k / ctx.mpf(params.a_mod)
    return -params.theta(ctx) * mp.sqrt(x_abs / 2)


def stokes_multiplier(params: Params, k: int, ctx: PrecisionContext):
    """Leading-order multiplier of ``e^{-X_k}`` near the Stokes line.

    ``i cos(pi nu) erf(-theta sqrt(|X_k|/2)) - sin(pi nu)``: ``-sin(pi nu)`` on
    the axis, tending to ``exp(-+ i pi (nu + 1/2))`` for ``theta`` of either sign.
    """
    mp = ctx.mp
    nu = params.nu_value(ctx)
    arg = stokes_erf_argument(params, k, ctx)
    return mp.mpc(0, 1) * mp.cospi(nu) * mp.erf(arg) - mp.sinpi(nu)
