"""Terminant function ``T_nu(z) = Gamma(nu) Gamma(1 - nu, z) / (2 pi)``.

Exact evaluation goes through the incomplete gamma function.  The asymptotic
forms cover large order ``mu - j`` with ``mu ~ x``, on the positive real axis
and on the ray ``arg z = pi``; both are parametrised by the offset
``gamma_j = mu - x - j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .errors import CoefficientUnavailableError
from .kernel import Polar, PrecisionContext

__all__ = [
    "TerminantOrder",
    "terminant_exact",
    "terminant_asymptotic_pos",
    "terminant_asymptotic_neg",
    "connection_residual",
    "A_closed",
    "G_hat_closed",
    "A_POLYS",
    "A4_PRINTED",
    "G_HAT_POLYS",
]


@dataclass(frozen=True)
class RationalPoly:
    """``scale * sum(coeffs[k] * g**k)`` with integer ``coeffs``."""

    scale: Fraction
    coeffs: tuple

    def __call__(self, g, ctx: PrecisionContext = None):
        if ctx is None:
            acc = Fraction(0)
            for a in reversed(self.coeffs):
                acc = acc * g + a
            return self.scale * acc
        mp = ctx.mp
        g = ctx.mpf(g)
        acc = mp.zero
        for a in reversed(self.coeffs):
            acc = acc * g + a
        return acc * self.scale.numerator / self.scale.denominator


# saddle-point coefficients on the positive axis, in powers of gamma_j
A_POLYS = (
    RationalPoly(Fraction(1), (1,)),
    RationalPoly(Fraction(1, 6), (2, -6, 3)),
    RationalPoly(Fraction(1, 288), (-11, -120, 300, -192, 36)),
    RationalPoly(Fraction(2, 51840), (-587, 3510, 9765, -26280, 18900, -5400, 540)),
    RationalPoly(
        Fraction(1, 2488320),
        (120341, -44592, -521736, -722880, 2336040, -1826496, 635040, -103680, 6480),
    ),
)

# A_4 with the denominator as it appears in print; the terminant error at K = 5
# then decays like x**-4 instead of x**-5
A4_PRINTED = RationalPoly(
    Fraction(1, 2448320),
    (120341, -44592, -521736, -722880, 2336040, -1826496, 635040, -103680, 6480),
)

# 6**(2r) G_{2r,j} on the negative axis
G_HAT_POLYS = (
    RationalPoly(Fraction(1, 3), (2, -3)),
    RationalPoly(Fraction(1, 15), (46, -225, 270, -90)),
    RationalPoly(Fraction(1, 70), (230, -3969, 11340, -11760, 5040, -756)),
    RationalPoly(
        Fraction(1, 350),
        (-3626, -17781, 183330, -397530, 370440, -170100, 37800, -3240),
    ),
    RationalPoly(
        Fraction(1, 231000),
        (
            -4032746,
            43924815,
            88280280,
            -743046480,
            1353607200,
            -1160830440,
            541870560,
            -141134400,
            19245600,
            -1069200,
        ),
    ),
)


def A_closed(r: int, g, ctx: PrecisionContext = None, printed: bool = False):
    """``A_{r,j}`` at ``gamma_j = g``; exact when ``ctx`` is None.

    ``printed=True`` swaps in :data:`A4_PRINTED` for ``r = 4``.
    """
    if not 0 <= r < len(A_POLYS):
        raise CoefficientUnavailableError(f"A_r is stored for r < {len(A_POLYS)}, asked for r = {r}")
    if printed and r == 4:
        return A4_PRINTED(g, ctx)
    return A_POLYS[r](g, ctx)


def G_hat_closed(r: int, g, ctx: PrecisionContext = None):
    """``6**(2r) G_{2r,j}`` at ``gamma_j = g``; exact when ``ctx`` is None."""
    if not 0 <= r < len(G_HAT_POLYS):
        raise CoefficientUnavailableError(f"G_2r is stored for r < {len(G_HAT_POLYS)}, asked for r = {r}")
    return G_HAT_POLYS[r](g, ctx)


@dataclass(frozen=True)
class TerminantOrder:
    """Order ``mu - j`` of a terminant, with ``mu = 2 N_k + vartheta``."""

    mu: object
    j: int = 0

    def value(self, ctx: PrecisionContext):
        return ctx.mpf(self.mu) - self.j


def terminant_exact(order, z, ctx: PrecisionContext):
    """``T_order(z)``; ``z`` may be a :class:`~besselsum.kernel.Polar`."""
    mp = ctx.mp
    nu = order.value(ctx) if isinstance(order, TerminantOrder) else ctx.mpf(order)
    return kernel.gamma(nu, ctx) * kernel.upper_incomplete_gamma(1 - nu, z, ctx) / (2 * mp.pi)


def connection_residual(order, r, ctx: PrecisionContext):
    """``T(r e^{-i pi}) - e^{2 pi i nu} [T(r e^{i pi}) - i e^{-i pi nu}]`` (should vanish).

    The value on the lower sheet is computed from the ascending series of the
    lower incomplete gamma function, independently of the continuation
    identity used by :func:`terminant_exact`.
    """
    mp = ctx.mp
    nu = ctx.mpf(order)
    r = ctx.mpf(r)
    a = 1 - nu
    lower_gamma = kernel.gamma(a, ctx) - kernel.lower_incomplete_gamma_series(a, Polar(r, -mp.pi), ctx)
    lower = kernel.gamma(nu, ctx) * lower_gamma / (2 * mp.pi)
    upper = terminant_exact(nu, Polar(r, mp.pi), ctx)
    return lower - mp.expjpi(2 * nu) * (upper - 1j * mp.expjpi(-nu))


def _gamma_offset(order: TerminantOrder, x, ctx):
    return ctx.mpf(order.mu) - x - order.j


def terminant_asymptotic_pos(order: TerminantOrder, x, K: int, ctx: PrecisionContext, generate: bool = False):
    """Large-order form of ``T_{mu-j}(x)`` for ``x > 0`` with ``mu ~ x``.

    Returns ``e^{-2x} / (2 sqrt(2 pi x)) * sum_{r<K} A_{r,j} x^{-r}``.  Only
    ``K <= 5`` is stored; ``generate=True`` derives the coefficients instead.
    """
    mp = ctx.mp
    x = ctx.mpf(x)
    g = _gamma_offset(order, x, ctx)
    if generate:
        from .coefficients import a_generate

        coeffs = a_generate(K, g, ctx)
    else:
        coeffs = [A_closed(r, g, ctx) for r in range(K)]
    total = mp.fsum(c * x ** (-r) for r, c in enumerate(coeffs))
    return mp.exp(-2 * x) / (2 * mp.sqrt(2 * mp.pi * x)) * total


def terminant_asymptotic_neg(order: TerminantOrder, x, K: int, ctx: PrecisionContext, generate: bool = False):
    """Large-order form of ``(-1)^j e^{i pi vartheta} T_{mu-j}(x e^{i pi})``.

    ``i/2 + (2 pi x)^{-1/2} sum_{r<K} (1/2)_r G_{2r,j} (x/2)^{-r}``; the phase
    ``e^{i pi vartheta}`` is fixed by ``mu`` since ``mu - vartheta`` is even.
    """
    mp = ctx.mp
    x = ctx.mpf(x)
    g = _gamma_offset(order, x, ctx)
    if generate:
        from .coefficients import g_generate

        coeffs = g_generate(K, g, ctx)
    else:
        coeffs = [G_hat_closed(r, g, ctx) / mp.mpf(36) ** r for r in range(K)]
    total = mp.fsum(mp.rf(mp.mpf(1) / 2, r) * c * (x / 2) ** (-r) for r, c in enumerate(coeffs))
    return mp.mpc(0, mp.mpf(1) / 2) + total / mp.sqrt(2 * mp.pi * x)
