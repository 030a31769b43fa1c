"""Acceptance criteria, one test each, with tolerances fixed in advance.

Every test records a single PASS/FAIL line.  The lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from besselsum import Params, PrecisionContext, algebraic_sum, algebraic_sum_direct, evaluate, plan_truncation
from besselsum.coefficients import C4_PRINTED, build_coefficients, c_closed, c_generate, g_generate
from besselsum.expansion import exp_small_series, remainder_terminant, stokes_multiplier, to_fraction
from besselsum.oracle import error_table, s_half_closed_form
from besselsum.tables import TABLE2, TABLE3, table1, table3
from besselsum.terminant import G_hat_closed, connection_residual

DIGITS = 120
RESULTS = []


@pytest.fixture(scope="module")
def ctx():
    return PrecisionContext(digits=DIGITS)


def record(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_c01_table1_coefficients(ctx):
    start = time.perf_counter()
    cells = [c for c in table1(ctx) if c.column in ("c_j", "N_1", "alpha")]
    elapsed = time.perf_counter() - start
    bad = [f"{c.row} {c.column}" for c in cells if c.status != "pass"]
    record(
        1,
        "Table 1 c_j and (N_1, alpha)",
        not bad and elapsed < 5,
        f"{len(cells) - len(bad)}/{len(cells)} cells, {elapsed:.2f}s" + (f", off: {bad}" if bad else ""),
    )


def test_c02_table1_b_column(ctx):
    cells = table1(ctx)
    b = [c for c in cells if c.row.startswith("nu=0 ") and c.column == "B_j" and c.counts]
    ident = [c for c in cells if c.column == "B_0 identity"]
    # the identity must also hold in the nu = 1/6 column
    alpha6 = plan_truncation(Params("1/6", "0.1"), 1, ctx)[0].alpha
    b0_6 = build_coefficients(ctx.mpf(Fraction(1, 6)), alpha6, 1, ctx).B[0]
    ident_6 = abs(b0_6 - (1 + 2 * (ctx.mpf(2) / 3 + alpha6))) < ctx.tol
    ok = len(b) == 4 and all(c.status == "pass" for c in b) and all(c.status == "pass" for c in ident) and ident_6
    record(2, "Table 1 B_j, nu=0, j=1..4 to 8 figures; B_0 identity", ok, f"{sum(c.status == 'pass' for c in b)}/4 B_j")


def test_c03_table3(ctx):
    worst = 0.0
    bad = []
    for row in TABLE3:
        start = time.perf_counter()
        cells = table3(ctx, [row])
        worst = max(worst, time.perf_counter() - start)
        bad += [f"{c.row} {c.column}" for c in cells if c.status != "pass"]
    record(3, "Table 3 S-hat (10 figures) and asymptotic (9 figures)", not bad and worst < 120, f"slowest row {worst:.1f}s" + (f", off: {bad}" if bad else ""))


def test_c04_table2(ctx):
    ok = True
    details = []
    for nu_s, printed in TABLE2.items():
        p = Params(nu_s, "0.1")
        X = abs(plan_truncation(p, 1, ctx)[0].X)
        errs = error_table(p, 5, ctx, source="printed")
        ratios = [e / ctx.mpf(q) for e, q in zip(errs, printed)]
        ok &= all(0.5 <= r <= 2 for r in ratios)
        steps = [errs[i + 1] / errs[i] for i in range(4)]
        ok &= all(1 / (3 * X) <= s <= 30 / X for s in steps)
        details.append(f"nu={nu_s} cell ratios {float(min(ratios)):.4f}..{float(max(ratios)):.4f}")
    record(4, "Table 2 within factor 2, X_1^-1 ladder", ok, "; ".join(details))


def test_c05_half_order_circuit(ctx):
    worst = 0
    for a in ("0.2", "0.5"):
        b = evaluate(Params("1/2", a), 12, None, ctx)
        ref = s_half_closed_form(a, ctx)
        worst = max(worst, abs(b.total - ref) / abs(b.exp_terms[0]))
    record(5, "nu=1/2 closed circuit at a=0.2, 0.5 (M=12)", worst < 1e-6, f"worst {float(worst):.2e} of the k=1 exponential")


def test_c06_connection_formula(ctx):
    rng = random.Random(20240601)
    tol = ctx.mpf(10) ** (-DIGITS + 12)
    worst = 0
    for _ in range(20):
        nu = rng.uniform(10, 150)
        r = nu + rng.uniform(-5, 5)
        worst = max(worst, abs(connection_residual(nu, r, ctx)))
    record(6, "terminant connection formula, 20 samples", worst < tol, f"worst residual {float(worst):.1e}")


def test_c07_cross_path(ctx):
    worst = 0
    for nu_s, a_s, *_ in TABLE3:
        p = Params(nu_s, a_s)
        plan = plan_truncation(p, 1, ctx)[0]
        series = exp_small_series(p, [plan], None, 5, ctx)[0]
        exact = remainder_terminant(p, plan, 5, ctx)
        worst = max(worst, abs(exact - series) / abs(series) * abs(plan.X) ** 5)
    record(7, "terminant remainder vs B/c series, C < 10 at M=5", worst < 10, f"largest C = {float(worst):.1f}")


def test_c08_regrouping(ctx):
    worst = 0
    for nu_s, a_s, *_ in TABLE3:
        p = Params(nu_s, a_s)
        plans = plan_truncation(p, 12, ctx)
        x, y = algebraic_sum(p, plans, ctx), algebraic_sum_direct(p, plans, ctx)
        worst = max(worst, abs(x - y) / abs(y))
    record(8, "k-ordered and Hurwitz-regrouped algebraic sums agree", worst < ctx.mpf(10) ** (-DIGITS + 10), f"worst {float(worst):.1e}")


def test_c09_generators(ctx):
    rng = random.Random(99)
    tol = ctx.mpf(10) ** (-DIGITS + 10)
    worst_c = worst_g = worst_c4 = 0
    for _ in range(10):
        nu = ctx.mpf(to_fraction(rng.uniform(0, 3)))
        g = ctx.mpf(to_fraction(rng.uniform(-5, 1)))
        cs = c_generate(5, nu, ctx)
        for j in range(4):
            worst_c = max(worst_c, abs(cs[j] - c_closed(j, nu, ctx)) / abs(cs[j]))
        worst_c4 = max(worst_c4, abs(cs[4] - C4_PRINTED(nu, ctx)) / abs(cs[4]))
        gs = g_generate(5, g, ctx)
        for r in range(5):
            worst_g = max(worst_g, abs(gs[r] * 36**r - G_hat_closed(r, g, ctx)) / max(1, abs(gs[r] * 36**r)))
    ok = worst_c < tol and worst_g < tol and worst_c4 < tol
    record(9, "generators vs stored c_0..c_3, printed c_4, G_2r", ok, f"c_0..c_3 {float(worst_c):.0e}, printed c_4 {float(worst_c4):.1e}, G {float(worst_g):.0e}")


def _half_width(nu, a, ctx):
    """theta where Im(multiplier) reaches half its limiting value, by bisection."""
    mp = ctx.mp
    target = mp.cospi(ctx.mpf(nu)) / 2
    lo, hi = mp.zero, mp.pi / 2 * mp.mpf("0.999")
    for _ in range(80):
        mid = (lo + hi) / 2
        im = -mp.im(stokes_multiplier(Params(nu, a, to_fraction(mid)), 1, ctx))
        lo, hi = (mid, hi) if im < target else (lo, mid)
    return (lo + hi) / 2


def test_c10_stokes(ctx):
    mp = ctx.mp
    nu = Fraction(1, 6)
    ok = True
    worst_end = 0
    widths = {}
    for a in (Fraction(1, 10), Fraction(1, 2)):
        X = mp.pi**2 / ctx.mpf(a)
        ok &= stokes_multiplier(Params(nu, a), 1, ctx) == -mp.sinpi(ctx.mpf(nu))
        for sign in (1, -1):
            theta = sign * 4 / mp.sqrt(X / 2)
            m = stokes_multiplier(Params(nu, a, to_fraction(theta)), 1, ctx)
            worst_end = max(worst_end, abs(m - mp.expjpi(-sign * (ctx.mpf(nu) + mp.mpf(1) / 2))))
        widths[a] = (_half_width(nu, a, ctx), X)
    (w1, x1), (w2, x2) = widths[Fraction(1, 10)], widths[Fraction(1, 2)]
    scaling = (w1 / w2) / mp.sqrt(x2 / x1)
    ok &= worst_end < 1e-4 and 0.5 <= scaling <= 2
    record(10, "Stokes multiplier limits and |X_1|^-1/2 width", ok, f"endpoint error {float(worst_end):.1e}, width scaling {float(scaling):.3f}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
