"""Coefficient families of the exponentially improved expansion.

* ``c_j(nu)``: inverse factorial expansion of
  ``Gamma(1 + 2s - 4 nu) / (Gamma(1 + s/2) Gamma(1 + s/2 - nu))``.
* ``A_{r,j}``, ``G_{2r,j}``: large-order terminant coefficients as functions of
  ``gamma_j = -alpha - j``.
* ``D_{r,j}(alpha) = A_{r,j} + 2^{r+1} (1/2)_r G_{2r,j}`` and
  ``B_j = sum_r (-1)^r c_{j-r} D_{r,j-r}``.

Closed forms are stored for ``j, r <= 4``; the generators compute any number
of terms, exactly over ``Fraction`` when no precision context is given.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import List, Optional

from .errors import CoefficientUnavailableError, PrecisionError
from .kernel import PrecisionContext
from .series import Series
from .terminant import A_closed, G_hat_closed, RationalPoly

__all__ = [
    "C_POLYS",
    "C4_PRINTED",
    "c_closed",
    "c_generate",
    "g_generate",
    "a_generate",
    "tau_series",
    "CoefficientSet",
    "build_coefficients",
]

C_POLYS = (
    RationalPoly(Fraction(1), (1,)),
    RationalPoly(Fraction(3, 8), (1, 4, 4)),
    RationalPoly(Fraction(1, 128), (57, 344, 696, 544, 144)),
    RationalPoly(Fraction(1, 1024), (945, 7068, 19196, 24288, 15472, 4800, 576)),
    RationalPoly(
        Fraction(1, 32768),
        (91035, 780624, 2531344, 4113984, 3746848, 1994496, 614656, 101376, 6912),
    ),
)

# c_4 as it appears in print.  It agrees with the expansion at nu = 0 only; the
# nu**6 and nu**7 coefficients should read 614656 and 101376.
C4_PRINTED = RationalPoly(
    Fraction(1, 32768),
    (91035, 780624, 2531344, 4113984, 3746848, 1994496, 615040, 101952, 6912),
)


def c_closed(j: int, nu, ctx: Optional[PrecisionContext] = None, printed: bool = False):
    """Stored polynomial ``c_j(nu)``, ``0 <= j <= 4``; exact when ``ctx`` is None.

    ``printed=True`` swaps in :data:`C4_PRINTED` for ``j = 4``.
    """
    if not 0 <= j < len(C_POLYS):
        raise IndexError(f"c_j is stored in closed form only for j <= 4, got j = {j}")
    if printed and j == 4:
        return C4_PRINTED(nu, ctx)
    return C_POLYS[j](nu, ctx)


def _lift(ctx: Optional[PrecisionContext]):
    if ctx is None:
        return Fraction
    return ctx.mpf


def _bernoulli_numbers(n: int) -> List[Fraction]:
    """B_0..B_n with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / Fraction(m + 1))
    return b


def _bernoulli_poly(n: int, x, bern: List[Fraction], lift):
    return sum((lift(comb(n, k) * bern[k]) * x ** (n - k) for k in range(n + 1)), lift(0))


def _log_gamma_ratio(p, q, n: int, bern, lift) -> Series:
    """``log[Gamma(x+p)/Gamma(x+q)] - (p-q) log x`` in powers of ``1/x``, length ``n``."""
    coeffs = [lift(0)]
    for k in range(1, n):
        diff = _bernoulli_poly(k + 1, p, bern, lift) - _bernoulli_poly(k + 1, q, bern, lift)
        coeffs.append((-1) ** (k + 1) * diff / (k * (k + 1)))
    return Series(coeffs)


def c_generate(J: int, nu, ctx: Optional[PrecisionContext] = None) -> list:
    """``c_0(nu) .. c_{J-1}(nu)`` from the gamma-ratio route.

    ``(1/x) S_1 S_2 S_3`` is expanded in ``1/(2x)`` through log-gamma
    differences, then matched against the inverse factorials
    ``1 / ((2x - 3nu - 1) ... (2x - 3nu - j))``.
    """
    if J < 1:
        raise ValueError("J must be at least 1")
    lift = _lift(ctx)
    nu = lift(nu)
    bern = _bernoulli_numbers(J + 1)
    quarter, half = lift(1) / 4, lift(1) / 2
    log_s = (
        _log_gamma_ratio(-nu + quarter, -3 * nu / 2, J, bern, lift)
        + _log_gamma_ratio(-nu + half, lift(0), J, bern, lift)
        + _log_gamma_ratio(-nu + 3 * quarter, -3 * nu / 2 + half, J, bern, lift)
    )
    e = log_s.exp()
    f = [e[n] * 2**n for n in range(J)]  # coefficients of (2x)^{-n}

    beta = 3 * nu
    v = Series.variable(J, lift(1))
    basis = []
    phi = Series.constant(lift(1), J)
    for j in range(J):
        basis.append(phi)
        # multiply by v / (1 - (beta + j + 1) v)
        phi = phi * v * (Series.constant(lift(1), J) - v * (beta + j + 1)).reciprocal()

    c = []
    for n in range(J):
        parts = [(-1) ** j * c[j] * basis[j][n] for j in range(n)]
        resid = f[n] - sum(parts, lift(0))
        cn = (-1) ** n * resid
        if ctx is not None and n > 0 and parts:
            scale = max(abs(p) for p in parts + [f[n]])
            if cn == 0 or scale / abs(cn) > ctx.mpf(10) ** ctx.guard_digits:
                raise PrecisionError(f"triangular solve for c_{n} lost more than {ctx.guard_digits} digits")
        c.append(cn)
    return c


@lru_cache(maxsize=None)
def _tau_exact(n: int) -> tuple:
    m = n + 2
    # 2 (t - log(1+t)) / t^2 = sum_{k>=0} 2 (-1)^k t^k / (k + 2)
    inner = Series([Fraction(2 * (-1) ** k, k + 2) for k in range(m)])
    root = inner.power(Fraction(1, 2))
    w_of_t = Series([Fraction(0)] + root.c[: n - 1])
    return tuple(w_of_t.revert().c)


def tau_series(n: int, lift=Fraction) -> Series:
    """``tau(w) - 1`` where ``w**2 / 2 = tau - log(tau) - 1``, ``tau ~ 1 + w``.

    Obtained by reverting ``w(t) = t sqrt(2 (t - log(1 + t)) / t**2)``; the
    rational coefficients are computed once per length and then converted.
    """
    return Series([lift(c.numerator) / lift(c.denominator) for c in _tau_exact(n)])


def _saddle_pieces(n: int, g, lift):
    t = tau_series(n + 2, lift)
    dt = t.derivative()  # length n + 1
    tau_pow = ((t.log1p()) * (g - 1)).exp().truncate(n + 1)
    return t, dt, tau_pow


def g_generate(R: int, g, ctx: Optional[PrecisionContext] = None) -> list:
    """``G_{2r,j}`` for ``r < R`` at ``gamma_j = g`` (not the ``6**(2r)``-scaled form).

    ``tau^{g-1}/(1 - tau) dtau/dw = -1/w + sum_r G_r w^r``.  With
    ``tau = 1 + t(w)`` the left side is ``-(1/w) tau^{g-1} t'(w) / (t(w)/w)``,
    so the pole is removed before any coefficient is read off.
    """
    if R < 1:
        raise ValueError("R must be at least 1")
    lift = _lift(ctx)
    g = lift(g)
    n = 2 * R + 1
    t, dt, tau_pow = _saddle_pieces(n, g, lift)
    t_over_w = t.shift_down(1).truncate(n + 1)
    p = tau_pow * dt * t_over_w.reciprocal()
    return [-p[2 * r + 1] for r in range(R)]


def a_generate(K: int, g, ctx: Optional[PrecisionContext] = None) -> list:
    """``A_{r,j}`` for ``r < K`` at ``gamma_j = g``.

    From the positive-axis Laplace integral: ``A_r = 2 (2r-1)!! F_{2r}`` where
    ``F(w) = tau^{g-1} t'(w) / (2 + t(w))``.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    lift = _lift(ctx)
    g = lift(g)
    n = 2 * K
    t, dt, tau_pow = _saddle_pieces(n, g, lift)
    two_plus_t = (t + 2).truncate(n + 1)
    f = tau_pow * dt * two_plus_t.reciprocal()
    out = []
    dfact = 1
    for r in range(K):
        if r > 0:
            dfact *= 2 * r - 1
        out.append(2 * dfact * f[2 * r])
    return out


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients for one ``(nu, alpha)`` pair, truncated at ``M`` terms."""

    nu: object
    alpha: object
    M: int
    c: tuple
    D: tuple  # D[r][j]
    B: tuple
    gamma_j: tuple

    def recompute_B(self):
        return tuple(
            sum((-1) ** r * self.c[j - r] * self.D[r][j - r] for r in range(j + 1)) for j in range(self.M)
        )


def build_coefficients(nu, alpha, M: int, ctx: PrecisionContext, source: str = "auto") -> CoefficientSet:
    """Assemble ``c``, ``D`` and ``B`` for truncation index ``M``.

    ``source="closed"`` uses only stored polynomials (``M <= 5``),
    ``"generated"`` only the series generators, and ``"auto"`` the stored
    polynomials where available.  ``"printed"`` is ``"closed"`` with the
    misprinted ``c_4`` and ``A_4``, which is what the published tables were
    computed from.
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    if source not in ("auto", "closed", "generated", "printed"):
        raise ValueError(f"unknown coefficient source {source!r}")
    mp = ctx.mp
    nu = ctx.mpf(nu)
    alpha = ctx.mpf(alpha)
    if M == 0:
        return CoefficientSet(nu, alpha, 0, (), (), (), ())
    printed = source == "printed"
    closed = source in ("closed", "printed") or (source == "auto" and M <= 5)
    if closed and M > 5:
        raise CoefficientUnavailableError("closed forms are stored only for M <= 5")

    gammas = tuple(-alpha - j for j in range(M))
    if closed:
        c = tuple(c_closed(j, nu, ctx, printed) for j in range(M))
        A = [[A_closed(r, g, ctx, printed) for g in gammas] for r in range(M)]
        G = [[G_hat_closed(r, g, ctx) / mp.mpf(36) ** r for g in gammas] for r in range(M)]
    else:
        c = tuple(c_generate(M, nu, ctx))
        a_cols = [a_generate(M, g, ctx) for g in gammas]
        g_cols = [g_generate(M, g, ctx) for g in gammas]
        A = [[a_cols[j][r] for j in range(M)] for r in range(M)]
        G = [[g_cols[j][r] for j in range(M)] for r in range(M)]
    half = mp.mpf(1) / 2
    D = tuple(
        tuple(A[r][j] + 2 ** (r + 1) * mp.rf(half, r) * G[r][j] for j in range(M)) for r in range(M)
    )
    B = tuple(sum((-1) ** r * c[j - r] * D[r][j - r] for r in range(j + 1)) for j in range(M))
    return CoefficientSet(nu, alpha, M, c, D, B, gammas)
