"""Configurable-precision arithmetic and the special functions used elsewhere.

Numbers are mpmath ``mpf``/``mpc`` values bound to a per-thread
``mpmath.MPContext`` owned by a :class:`PrecisionContext`.  mpmath adjusts
its context precision internally while it works, so one context object is
never shared between threads; each thread gets its own copy at the same
precision.

Gamma, log-gamma, digamma, the Riemann zeta function, the error function and
the principal branch of the incomplete gamma function delegate to mpmath.
The Hurwitz zeta function, the modified Bessel function K and the continuation
of the incomplete gamma function beyond the principal sector are implemented
here.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .errors import DomainError, PoleError, PrecisionError

__all__ = [
    "PrecisionContext",
    "Polar",
    "gamma",
    "log_gamma",
    "digamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "upper_incomplete_gamma",
    "lower_incomplete_gamma_series",
    "is_complex",
    "erf",
    "bessel_k",
    "bessel_k_integral",
]

_local = threading.local()


def _mpcontext(dps: int) -> mpmath.MPContext:
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    mp = cache.get(dps)
    if mp is None:
        mp = mpmath.MPContext()
        mp.dps = dps
        cache[dps] = mp
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision, in significant decimal digits.

    Arithmetic is carried out at ``digits + guard_digits``; results are
    expected to be good to roughly ``10**(-digits + 5)`` relative.
    """

    digits: int = 120
    guard_digits: int = 15

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError(f"digits must be at least 30, got {self.digits}")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be non-negative")

    @property
    def dps(self) -> int:
        return self.digits + self.guard_digits

    @property
    def mp(self) -> mpmath.MPContext:
        """The calling thread's mpmath context at working precision."""
        return _mpcontext(self.dps)

    @property
    def eps(self):
        """Relative tolerance at the working precision."""
        return self.mp.mpf(10) ** (-self.dps)

    @property
    def tol(self):
        """Relative tolerance at the advertised precision."""
        return self.mp.mpf(10) ** (-self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(max(int(digits), 30), self.guard_digits)

    def raised(self, extra: int) -> "PrecisionContext":
        return self.with_digits(self.digits + int(extra))

    def mpf(self, x):
        """Convert ``x`` to a real at this precision.

        Accepts ints, floats, ``Fraction``, mpmath numbers and decimal strings;
        strings of the form ``"p/q"`` are read as exact ratios.
        """
        mp = self.mp
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        if isinstance(x, str) and "/" in x:
            p, q = x.split("/")
            return mp.mpf(p.strip()) / mp.mpf(q.strip())
        return mp.mpf(x)

    def mpc(self, z):
        mp = self.mp
        if isinstance(z, (Fraction, str)):
            return mp.mpc(self.mpf(z))
        return mp.mpc(z)

    def num(self, z):
        """Convert to ``mpf`` when ``z`` is real, otherwise to ``mpc``."""
        if is_complex(z):
            return self.mpc(z)
        return self.mpf(z)


@dataclass(frozen=True)
class Polar:
    """A point ``modulus * exp(i * phase)`` on the Riemann surface of log.

    Plain complex numbers cannot tell ``x e^{i pi}`` from ``x e^{-i pi}``;
    functions with branch cuts accept this type to say which sheet is meant.
    """

    modulus: object
    phase: object


def is_complex(z) -> bool:
    """True for Python complex and mpmath ``mpc`` values of any context."""
    return isinstance(z, complex) or hasattr(z, "_mpc_")


Number = Union[int, float, complex, str, Fraction, mpmath.mpf, mpmath.mpc]


def _is_nonpositive_integer(mp, z) -> bool:
    if mp.im(z) != 0:
        return False
    x = mp.re(z)
    return x <= 0 and mp.isint(x)


def gamma(z: Number, ctx: PrecisionContext):
    mp = ctx.mp
    z = ctx.num(z)
    if _is_nonpositive_integer(mp, z):
        raise PoleError(f"gamma has a pole at {z}")
    return mp.gamma(z)


def log_gamma(z: Number, ctx: PrecisionContext):
    mp = ctx.mp
    z = ctx.num(z)
    if _is_nonpositive_integer(mp, z):
        raise PoleError(f"log_gamma has a pole at {z}")
    return mp.loggamma(z)


def digamma(z: Number, ctx: PrecisionContext):
    mp = ctx.mp
    z = ctx.num(z)
    if _is_nonpositive_integer(mp, z):
        raise PoleError(f"digamma has a pole at {z}")
    return mp.digamma(z)


def riemann_zeta(s: Number, ctx: PrecisionContext):
    mp = ctx.mp
    s = ctx.num(s)
    if s == 1:
        raise PoleError("riemann_zeta has a pole at s = 1")
    return mp.zeta(s)


def hurwitz_zeta(s: Number, q: Number, ctx: PrecisionContext):
    """Sum of ``(r + q)**(-s)`` over ``r >= 0`` for real ``s > 1``, ``q > 0``.

    Large ``s`` (the usual case in the algebraic double sum) is handled by
    direct summation alone.  Otherwise the first ``dps`` terms are summed and
    the tail is closed with Euler-Maclaurin.
    """
    mp = ctx.mp
    s = ctx.mpf(s)
    q = ctx.mpf(q)
    if s <= 1:
        raise DomainError(f"hurwitz_zeta requires s > 1, got {s}")
    if q <= 0:
        raise DomainError(f"hurwitz_zeta requires q > 0, got {q}")
    eps = ctx.eps
    n_direct = ctx.dps + 10
    total = mp.zero
    for r in range(n_direct):
        x = q + r
        term = x ** (-s)
        total += term
        # integral bound on the remaining terms
        if term * (1 + x / (s - 1)) < eps * total:
            return total
    x = q + n_direct
    xs = x ** (-s)
    total += x * xs / (s - 1) + xs / 2
    rising = s  # s (s+1) ... (s+2k-2)
    xpow = xs / x  # x**(-s-2k+1)
    for k in range(1, 4 * ctx.dps):
        term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * rising * xpow
        total += term
        if abs(term) < eps * abs(total):
            return total
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        xpow /= x * x
    raise PrecisionError(f"Euler-Maclaurin tail did not converge for s={s}, q={q}")


def _polar_parts(ctx: PrecisionContext, z):
    mp = ctx.mp
    if isinstance(z, Polar):
        return ctx.mpf(z.modulus), ctx.mpf(z.phase)
    z = ctx.mpc(z)
    return abs(z), mp.arg(z)


def upper_incomplete_gamma(a: Number, z, ctx: PrecisionContext):
    """Upper incomplete gamma function ``Gamma(a, z)`` for ``|arg z| < 3 pi / 2``.

    ``z`` may be an ordinary number (principal branch) or a :class:`Polar`.
    Arguments with ``pi < |arg z| < 3 pi / 2`` are reached from the principal
    sheet through ``Gamma(a, w e^{2 pi i m}) = e^{2 pi i m a} Gamma(a, w)
    + (1 - e^{2 pi i m a}) Gamma(a)``, with the limiting form of that identity
    when ``a`` is a non-positive integer.
    """
    mp = ctx.mp
    a = ctx.mpf(a)
    r, phi = _polar_parts(ctx, z)
    if abs(phi) >= 3 * mp.pi / 2:
        raise DomainError(f"upper_incomplete_gamma needs |arg z| < 3 pi / 2, got {phi}")
    if r == 0:
        if a <= 0:
            raise PoleError("Gamma(a, 0) diverges for a <= 0")
        return mp.gamma(a)
    if phi == 0:
        return mp.gammainc(a, r)
    if -mp.pi < phi <= mp.pi:
        w = mp.mpc(-r, 0) if phi == mp.pi else r * mp.expjpi(phi / mp.pi)
        return mp.gammainc(a, w)
    # one turn off the principal sheet
    m = 1 if phi > 0 else -1
    w = mp.mpc(-r, 0) if phi == -mp.pi else r * mp.expjpi((phi - 2 * m * mp.pi) / mp.pi)
    base = mp.gammainc(a, w)
    if mp.isint(a) and a <= 0:
        n = int(-a)
        return base - 2j * mp.pi * m * (-1) ** n / mp.factorial(n)
    rot = mp.expjpi(2 * m * a)
    return rot * base + (1 - rot) * mp.gamma(a)


def lower_incomplete_gamma_series(a: Number, z, ctx: PrecisionContext):
    """``gamma(a, z) = z^a sum_k (-z)^k / (k! (a + k))`` on any sheet.

    The phase of ``z^a`` is taken from the :class:`Polar` as given, so no
    continuation formula is involved.  Extra digits cover the ``e^{|z|}``
    growth of the terms.
    """
    r, phi = _polar_parts(ctx, z)
    mp0 = ctx.mp
    a0 = ctx.mpf(a)
    if _is_nonpositive_integer(mp0, a0):
        raise PoleError(f"gamma(a, z) series has a pole at a = {a0}")
    extra = int(mp0.nint(r / mp0.log(10))) + 10
    work = ctx.raised(extra)
    mp = work.mp
    a, r, phi = work.mpf(a), work.mpf(r), work.mpf(phi)
    w = r * mp.expj(phi)
    term = mp.one
    total = 1 / a
    k = 0
    eps = work.eps
    while True:
        k += 1
        term *= -w / k
        part = term / (a + k)
        total += part
        if k > r and abs(part) < eps * abs(total):
            break
    value = mp.power(r, a) * mp.expj(a * phi) * total
    return ctx.mpc(value)


def erf(z: Number, ctx: PrecisionContext):
    return ctx.mp.erf(ctx.num(z))


def _check_bessel_arg(ctx: PrecisionContext, z):
    mp = ctx.mp
    if z == 0:
        raise DomainError("bessel_k is singular at z = 0")
    if abs(mp.arg(z)) >= mp.pi / 2:
        raise DomainError(f"bessel_k needs |arg z| < pi / 2, got arg z = {mp.arg(z)}")


def _bessel_k_hankel(mp, nu, z, eps):
    """Large-argument expansion; ``None`` if it cannot reach ``eps``."""
    mu = 4 * nu * nu
    term = mp.one
    total = mp.one
    prev = mp.inf
    k = 1
    while True:
        term = term * (mu - (2 * k - 1) ** 2) / (8 * k * z)
        mag = abs(term)
        if mag < eps:
            total += term
            break
        if mag > prev and k > nu:
            return None
        prev = mag
        total += term
        k += 1
    return mp.sqrt(mp.pi / (2 * z)) * mp.exp(-z) * total


def _bessel_i_series(mp, nu, z, eps):
    """Ascending series for I_nu(z)."""
    h = z / 2
    h2 = h * h
    term = h ** nu / mp.gamma(nu + 1)
    total = term
    k = 1
    while True:
        term = term * h2 / (k * (k + nu))
        total += term
        if k > abs(z) and abs(term) <= eps * abs(total):
            return total
        k += 1


def _bessel_k_integer_series(mp, n, z, eps):
    """Logarithmic series for K_n(z), n a non-negative integer."""
    h = z / 2
    h2 = h * h
    finite = mp.zero
    if n > 0:
        term = mp.factorial(n - 1)
        for k in range(n):
            finite += term
            if k + 1 < n:
                term = term * (-h2) / ((k + 1) * (n - k - 1))
        finite = finite * h ** (-n) / 2
    # psi(k+1) + psi(n+k+1) built up recursively
    psi_a = -mp.euler
    psi_b = -mp.euler + sum(mp.one / i for i in range(1, n + 1))
    term = h ** n / mp.factorial(n)
    inu = term
    psi_sum = term * (psi_a + psi_b)
    k = 1
    while True:
        term = term * h2 / (k * (n + k))
        psi_a += mp.one / k
        psi_b += mp.one / (n + k)
        inu += term
        psi_sum += term * (psi_a + psi_b)
        if k > abs(z) and abs(term) * (abs(psi_a) + abs(psi_b) + 1) <= eps * abs(psi_sum):
            break
        k += 1
    sign = -1 if n % 2 else 1
    return finite - sign * mp.log(h) * inu + sign * psi_sum / 2


def bessel_k(nu: Number, z: Number, ctx: PrecisionContext):
    """Modified Bessel function ``K_nu(z)`` for real order, ``|arg z| < pi / 2``.

    Large ``|z|`` uses the Hankel expansion when it can reach working
    precision.  Otherwise non-integer orders go through
    ``(pi / 2) (I_{-nu} - I_nu) / sin(pi nu)`` and integer orders through the
    logarithmic series, in both cases at enough extra precision to absorb the
    ``e^{2|z|}`` cancellation.
    """
    mp = ctx.mp
    nu = abs(ctx.mpf(nu))
    z = ctx.num(z)
    _check_bessel_arg(ctx, z)
    real = not is_complex(z) or mp.im(z) == 0

    result = _bessel_k_hankel(mp, nu, z, ctx.eps)
    if result is None:
        extra = int(2 * float(abs(z)) / math.log(10)) + 10
        integer = mp.isint(nu)
        if not integer:
            s = abs(mp.sinpi(nu))
            extra += max(0, int(-float(mp.log10(s))))
        work = ctx.raised(extra)
        wp = work.mp
        wnu, wz = wp.mpf(nu), work.num(z)
        if integer:
            result = _bessel_k_integer_series(wp, int(nu), wz, work.eps)
        else:
            result = (
                wp.pi
                / 2
                * (_bessel_i_series(wp, -wnu, wz, work.eps) - _bessel_i_series(wp, wnu, wz, work.eps))
                / wp.sinpi(wnu)
            )
        result = ctx.num(result)
    if real:
        return mp.re(result)
    return result


def bessel_k_integral(nu: Number, z: Number, ctx: PrecisionContext):
    """``K_nu(z)`` from ``int_0^inf exp(-z cosh t) cosh(nu t) dt`` by tanh-sinh.

    Independent of :func:`bessel_k`; meant as a cross-check.  The range is
    cut where the integrand drops below working precision, since tanh-sinh
    nodes far out make ``exp(-cosh t)`` needlessly expensive.
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    z = ctx.num(z)
    _check_bessel_arg(ctx, z)
    rz = mp.re(z)
    cutoff = ctx.dps * mp.log(10) + 20
    # work relative to the peak value e^{-z}; the bulk has width ~ z^{-1/2}
    t_max = mp.one
    while rz * (mp.cosh(t_max) - 1) - abs(nu) * t_max < cutoff:
        t_max *= 2
    width = min(mp.one, 1 / mp.sqrt(rz))
    pts = [mp.zero]
    while pts[-1] + width < t_max:
        pts.append(pts[-1] + width)
        width *= 2
    pts.append(t_max)
    val = mp.quad(lambda t: mp.exp(-z * (mp.cosh(t) - 1)) * mp.cosh(nu * t), pts) * mp.exp(-z)
    if not is_complex(z):
        return mp.re(val)
    return val
