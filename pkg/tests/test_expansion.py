"""Expansion engine: truncation plans, residue term, algebraic sums, exponentially small parts."""

import warnings
from fractions import Fraction

import pytest

from besselsum import (
    CancellationWarning,
    DomainError,
    Params,
    PlanExhaustedError,
    PrecisionContext,
    algebraic_sum,
    algebraic_sum_direct,
    evaluate,
    exp_small_series,
    h_term,
    plan_truncation,
    remainder_terminant,
    stokes_multiplier,
)
from besselsum.coefficients import c_generate
from besselsum.expansion import default_k_max, series_term, stokes_erf_argument, to_fraction
from besselsum.oracle import s_direct, s_half_closed_form


def rel(x, y):
    return abs(x - y) / abs(y)


# --- parameters -----------------------------------------------------------

def test_params_decomposition():
    p = Params("7/3", "0.1")
    assert p.m == 2 and p.nu_prime == Fraction(1, 3)
    assert Params("0.25", 1).nu_prime == Fraction(1, 4)
    assert p.on_stokes_line


def test_params_validation():
    with pytest.raises(DomainError):
        Params(-1, "0.1")
    with pytest.raises(DomainError):
        Params(0, 0)
    with pytest.raises(DomainError):
        Params(0, "0.1", "1.6")
    with pytest.raises(DomainError):
        Params(0, "0.1", "-1.5708")
    Params(0, "0.1", "1.5707")


def test_to_fraction(ctx):
    assert to_fraction("1/6") == Fraction(1, 6)
    assert to_fraction("1e-8") == Fraction(1, 10**8)
    assert to_fraction(ctx.mpf("0.5")) == Fraction(1, 2)
    assert to_fraction(ctx.mpf(0)) == 0


def test_complex_a(ctx):
    p = Params("0.5", "0.2", "0.3")
    a = p.a(ctx)
    assert abs(abs(a) - ctx.mpf("0.2")) < ctx.tol
    assert abs(ctx.mp.arg(a) - ctx.mpf("0.3")) < ctx.tol


# --- truncation plans -----------------------------------------------------

@pytest.mark.parametrize(
    "nu,a,N,alpha",
    [("0", "0.1", 49, "0.6960440109"), ("1/6", "0.1", 50, "-0.8039559891"), ("0", "0.5", 10, "-0.2607911978")],
)
def test_plan_examples(nu, a, N, alpha, ctx):
    plan = plan_truncation(Params(nu, a), 1, ctx)[0]
    assert plan.N == N
    assert abs(plan.alpha - ctx.mpf(alpha)) < 5e-11
    assert abs(abs(plan.X) - (2 * plan.N + plan.vartheta + plan.alpha)) < ctx.tol


@pytest.mark.parametrize("a", ["0.1", "0.2", "0.5"])
@pytest.mark.parametrize("nu", ["0", "1/6", "3/2"])
def test_plan_invariants(nu, a, ctx):
    plans = plan_truncation(Params(nu, a), 5, ctx)
    assert all(-1 <= p.alpha <= 1 for p in plans)
    assert all(p.N < q.N for p, q in zip(plans, plans[1:]))
    assert all(p.mu == 2 * p.N + p.vartheta for p in plans)


@pytest.mark.parametrize("a", ["0.1", "0.2", "0.5"])
@pytest.mark.parametrize("nu", ["0", "1/6"])
def test_truncation_is_near_smallest_term(nu, a, ctx):
    p = Params(nu, a)
    for plan in plan_truncation(p, 2, ctx):
        lo, hi = max(p.m + 1, plan.N - 6), plan.N + 6
        terms = {n: abs(series_term(p, n, plan.k, ctx)) for n in range(lo, hi)}
        smallest = min(terms, key=terms.get)
        assert abs(smallest - plan.N) <= 1


def test_default_k_max(ctx):
    p = Params(0, "0.5")
    k = default_k_max(p, ctx)
    X1 = ctx.mp.pi**2 / ctx.mpf("0.5")
    assert X1 * (k * k - 1) > ctx.dps * ctx.mp.log(10)
    assert X1 * ((k - 1) ** 2 - 1) <= ctx.dps * ctx.mp.log(10)


# --- residue term ---------------------------------------------------------

def test_h_term_nu_zero(ctx):
    mp = ctx.mp
    a = ctx.mpf("0.3")
    expected = mp.gamma(mp.mpf(1) / 4) ** 2 / (2 ** (mp.mpf(5) / 2) * mp.sqrt(a)) + (mp.euler + mp.log(a / (8 * mp.pi**2))) / 2
    assert rel(h_term(Params(0, "0.3"), ctx), expected) < ctx.tol


def test_h_term_nu_half(ctx):
    mp = ctx.mp
    a = ctx.mpf("0.2")
    expected = mp.pi ** (mp.mpf(5) / 2) / (6 * a) - mp.pi / mp.sqrt(a) + mp.sqrt(mp.pi) / 2
    assert rel(h_term(Params("1/2", "0.2"), ctx), expected) < ctx.tol


def _quiet_h(params, ctx):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CancellationWarning)
        return h_term(params, ctx)


@pytest.mark.parametrize("branch", [Fraction(0), Fraction(1), Fraction(1, 4), Fraction(5, 4)])
def test_h_term_branches_are_limits(branch, ctx):
    """Generic form approaches the logarithmic forms linearly in the offset."""
    a = "0.3"
    at_branch = h_term(Params(branch, a), ctx)
    near = _quiet_h(Params(branch + Fraction(1, 10**8), a), ctx)
    assert abs(near - at_branch) < 1e-8 * 10**5
    # closer in, at doubled working precision, to half the digits
    offset = Fraction(1, 10 ** (ctx.digits // 2 + 5))
    nearer = _quiet_h(Params(branch + offset, a), ctx)
    assert abs(nearer - at_branch) < ctx.mpf(10) ** (-ctx.digits // 2)


def test_h_term_nu_zero_limit_is_first_order(ctx):
    a = "0.3"
    d1 = abs(_quiet_h(Params(Fraction(1, 10**8), a), ctx) - h_term(Params(0, a), ctx))
    d2 = abs(_quiet_h(Params(Fraction(2, 10**8), a), ctx) - h_term(Params(0, a), ctx))
    assert 1.9 < d2 / d1 < 2.1


def test_h_term_warns_near_branch(ctx):
    with pytest.warns(CancellationWarning):
        h_term(Params(Fraction(1, 4) + Fraction(1, 10**9), "0.3"), ctx)
    with warnings.catch_warnings():
        warnings.simplefilter("error", CancellationWarning)
        h_term(Params(Fraction(1, 4), "0.3"), ctx)
        h_term(Params("0.3", "0.3"), ctx)


# --- algebraic sum --------------------------------------------------------

def test_algebraic_sum_vanishes_at_half(ctx):
    p = Params("1/2", "0.2")
    plans = plan_truncation(p, 4, ctx)
    assert algebraic_sum(p, plans, ctx) == 0
    assert algebraic_sum_direct(p, plans, ctx) == 0


def test_algebraic_first_term(ctx):
    mp = ctx.mp
    p = Params(0, "0.5")
    u = ctx.mpf("0.5") / (8 * mp.pi**2)
    expected = 24 * u**2 * mp.zeta(5)
    assert rel(series_term(p, 1, 1, ctx), 24 * u**2) < ctx.tol
    plans = plan_truncation(p, 10, ctx)
    # N_0 = 1: the first block starts with this term
    first_block = algebraic_sum(p, plans, ctx)
    # n = 2 is already 2% of n = 1 at this a
    assert rel(first_block, expected) < 0.05


@pytest.mark.parametrize("nu", ["0", "1/6", "1/3", "5/4", "7/3"])
@pytest.mark.parametrize("a", ["0.2", "0.5"])
def test_regrouping_identity(nu, a, ctx):
    p = Params(nu, a)
    plans = plan_truncation(p, 10, ctx)
    x = algebraic_sum(p, plans, ctx)
    y = algebraic_sum_direct(p, plans, ctx)
    assert rel(x, y) < ctx.mpf(10) ** (-ctx.digits + 10)


def test_plan_exhaustion(ctx):
    p = Params(0, "0.5")
    with pytest.raises(PlanExhaustedError):
        algebraic_sum(p, plan_truncation(p, 1, ctx), ctx)
    with pytest.raises(PlanExhaustedError):
        algebraic_sum_direct(p, plan_truncation(p, 1, ctx), ctx)


# --- exponentially small parts --------------------------------------------

def test_exp_small_series_requires_stokes_line(ctx):
    p = Params(0, "0.2", "0.1")
    with pytest.raises(DomainError):
        exp_small_series(p, plan_truncation(p, 1, ctx), None, 3, ctx)
    with pytest.raises(DomainError):
        evaluate(p, 3, 1, ctx, mode="theorem")


def test_exp_small_series_half_order_reduction(ctx):
    mp = ctx.mp
    p = Params("1/2", "0.2")
    plans = plan_truncation(p, 2, ctx)
    got = exp_small_series(p, plans, None, 4, ctx)
    c = c_generate(4, ctx.mpf("0.5"), ctx)
    a = ctx.mpf("0.2")
    for plan, value in zip(plans, got):
        X = plan.X
        expected = -mp.sqrt(a) / mp.pi * mp.exp(-X) / plan.k**2 * mp.fsum((-1) ** j * c[j] * X ** -j for j in range(4))
        assert rel(value, expected) < ctx.tol


def test_remainder_at_half_needs_no_terminants(ctx):
    mp = ctx.mp
    p = Params("1/2", "0.2")
    plan = plan_truncation(p, 1, ctx)[0]
    c = [ctx.mpf(1), ctx.mpf(2)]
    r = remainder_terminant(p, plan, 2, ctx, c=c)
    a = ctx.mpf("0.2")
    expected = -(2 ** mp.mpf(0)) * mp.sqrt(a) / mp.pi * mp.exp(-plan.X) * (1 - 2 / plan.X)
    assert rel(r, expected) < ctx.tol


@pytest.mark.parametrize("nu,a", [("0", "0.2"), ("1/6", "0.1")])
def test_remainder_matches_series(nu, a, ctx60):
    p = Params(nu, a)
    plan = plan_truncation(p, 1, ctx60)[0]
    series = exp_small_series(p, [plan], None, 5, ctx60)[0]
    exact = remainder_terminant(p, plan, 5, ctx60)
    # the difference is the first omitted order
    assert rel(exact, series) < 200 * abs(plan.X) ** -5


def test_remainder_against_shat_scale(ctx):
    from besselsum.oracle import s_hat

    p = Params(0, "0.5")
    plan = plan_truncation(p, 1, ctx)[0]
    r = remainder_terminant(p, plan, 5, ctx)
    assert rel(r, s_hat(p, None, ctx)) < 5e-5


# --- full evaluation ------------------------------------------------------

@pytest.mark.parametrize("a", ["0.2", "0.5"])
def test_half_order_closed_circuit(a, ctx):
    # the c-series is itself asymptotic; twelve terms reach below 1e-6 at a = 0.5
    p = Params("1/2", a)
    b = evaluate(p, 12, None, ctx)
    ref = s_half_closed_form(a, ctx)
    assert abs(b.total - ref) / abs(b.exp_terms[0]) < 1e-6


def test_breakdown_sums(ctx):
    b = evaluate(Params("1/6", "0.5"), 3, 2, ctx)
    assert b.total == b.h_term + b.algebraic_sum + ctx.mp.fsum(b.exp_terms)
    assert len(b.exp_terms) == 2 and b.mode == "theorem"


def test_no_exponentials(ctx):
    p = Params("1/3", "0.5")
    b = evaluate(p, 0, 0, ctx)
    assert b.exp_terms == ()
    assert b.total == b.h_term + b.algebraic_sum


def test_off_axis_against_direct_sum(ctx):
    p = Params("1/6", "0.3", "0.4")
    b = evaluate(p, 5, 1, ctx)
    assert b.mode == "terminant"
    direct = s_direct(p, ctx).value
    assert abs(b.total - direct) < 1e3 * b.error_model
    assert abs(b.total - direct) < 1e-4 * abs(b.exp_terms[0])


def test_modes_agree_on_axis(ctx):
    p = Params(0, "0.2")
    t = evaluate(p, 5, 1, ctx, mode="theorem")
    r = evaluate(p, 5, 1, ctx, mode="terminant")
    assert abs(t.total - r.total) < 100 * t.error_model


def test_error_model_tracks_truncation(ctx):
    p = Params(0, "0.5")
    direct = s_direct(p, ctx).value
    for M in (2, 3, 4):
        b = evaluate(p, M, 1, ctx)
        err = abs(b.total - direct)
        assert b.error_model / 10 < err < b.error_model * 10


# --- Stokes multiplier ----------------------------------------------------

def test_stokes_on_axis(ctx):
    p = Params("1/6", "0.2")
    assert stokes_multiplier(p, 1, ctx) == -ctx.mp.sinpi(ctx.mpf(1) / 6)


@pytest.mark.parametrize("sign", [1, -1])
def test_stokes_limits(sign, ctx):
    mp = ctx.mp
    nu = Fraction(1, 6)
    a = Fraction(1, 10)
    X = mp.pi**2 / ctx.mpf(a)
    theta = sign * 4 / mp.sqrt(X / 2)
    p = Params(nu, a, to_fraction(theta))
    target = mp.expjpi(-sign * (ctx.mpf(nu) + ctx.mpf(1) / 2))
    assert abs(stokes_multiplier(p, 1, ctx) - target) < 1e-4


def test_stokes_width_scaling(ctx):
    mp = ctx.mp
    half_widths = {}
    for a in ("0.1", "0.5"):
        p = Params(0, a)
        scale = stokes_erf_argument(Params(0, a, 1), 1, ctx)
        # erf(-theta * scale) = -1/2 where theta * |scale| = erfinv(1/2)
        half_widths[a] = mp.erfinv(mp.mpf(1) / 2) / abs(scale)
    X = {a: mp.pi**2 / ctx.mpf(a) for a in half_widths}
    ratio = (half_widths["0.1"] / half_widths["0.5"]) / mp.sqrt(X["0.5"] / X["0.1"])
    assert 0.5 < ratio < 2
