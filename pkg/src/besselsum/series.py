"""Dense truncated power series.

Coefficients may be any field-like type (``Fraction`` for exact work, mpmath
reals at a chosen precision); nothing here assumes floating point.  All
operations keep the length of the shortest operand.
"""

from __future__ import annotations

from typing import Callable, Sequence


class Series:
    """``sum(c[k] * x**k for k < len(c))`` modulo ``x**len(c)``."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        self.c = list(coeffs)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k):
        return self.c[k]

    def __repr__(self):
        return f"Series({self.c!r})"

    @classmethod
    def constant(cls, value, n: int, zero=0):
        return cls([value] + [zero * value] * (n - 1))

    @classmethod
    def variable(cls, n: int, one=1):
        zero = one - one
        return cls([zero, one] + [zero] * (n - 2))

    def truncate(self, n: int) -> "Series":
        return Series(self.c[:n])

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        zero = self.c[0] - self.c[0]
        return Series([other] + [zero] * (len(self) - 1))

    def __add__(self, other):
        other = self._coerce(other)
        n = min(len(self), len(other))
        return Series([self.c[k] + other.c[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([a * other for a in self.c])
        n = min(len(self), len(other))
        a, b = self.c, other.c
        return Series([sum((a[i] * b[k - i] for i in range(1, k + 1)), a[0] * b[k]) for k in range(n)])

    __rmul__ = __mul__

    def reciprocal(self) -> "Series":
        a = self.c
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            acc = sum((a[i] * out[k - i] for i in range(2, k + 1)), a[1] * out[k - 1])
            out.append(-acc * inv0)
        return Series(out)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return Series([a / other for a in self.c])
        return self * other.reciprocal()

    def derivative(self) -> "Series":
        """Formal derivative; the result is one term shorter."""
        return Series([k * self.c[k] for k in range(1, len(self))])

    def integral(self) -> "Series":
        """Antiderivative with zero constant; one term longer."""
        zero = self.c[0] - self.c[0]
        return Series([zero] + [self.c[k] / (k + 1) for k in range(len(self))])

    def shift_down(self, k: int = 1) -> "Series":
        """Divide by ``x**k``; the first ``k`` coefficients must vanish."""
        if any(a != 0 for a in self.c[:k]):
            raise ValueError("leading coefficients are not zero")
        return Series(self.c[k:])

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(x))`` for ``inner`` with zero constant term (Horner)."""
        if inner.c[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(len(self), len(inner))
        inner = inner.truncate(n)
        acc = Series.constant(self.c[n - 1], n)
        for k in range(n - 2, -1, -1):
            acc = acc * inner + self.c[k]
        return acc

    def revert(self) -> "Series":
        """Compositional inverse of a series ``f = a1 x + O(x**2)``, ``a1 != 0``.

        Lagrange inversion: ``[x^k] g = (1/k) [t^{k-1}] (t / f(t))^k``, with the
        powers of ``t / f(t)`` built up one multiplication at a time.
        """
        a = self.c
        if a[0] != 0 or a[1] == 0:
            raise ValueError("reversion needs f(0) = 0 and f'(0) != 0")
        n = len(a)
        zero = a[0] - a[0]
        h = self.shift_down(1).reciprocal().truncate(n - 1)
        g = [zero] * n
        power = h
        for k in range(1, n):
            g[k] = power.c[k - 1] / k
            if k < n - 1:
                power = power * h
        return Series(g)

    def exp(self, exp_fn: Callable = None) -> "Series":
        """``exp`` of the series; ``exp_fn`` is needed only if ``self[0] != 0``."""
        a = self.c
        n = len(a)
        head = a[0]
        zero = head - head
        out = [zero * 0 + 1] + [zero] * (n - 1)
        # f' = a' f, solved term by term
        for k in range(1, n):
            out[k] = sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
        if head != 0:
            if exp_fn is None:
                raise ValueError("exp_fn required for a non-zero constant term")
            scale = exp_fn(head)
            out = [scale * v for v in out]
        return Series(out)

    def log1p(self) -> "Series":
        """``log(1 + self)`` for a series with zero constant term."""
        if self.c[0] != 0:
            raise ValueError("log1p needs a zero constant term")
        one_plus = self + 1
        return (self.derivative() * one_plus.truncate(len(self) - 1).reciprocal()).integral()

    def power(self, p) -> "Series":
        """``self**p`` for a series with constant term 1."""
        if self.c[0] != 1:
            raise ValueError("power needs a constant term of 1")
        return (self.log1p_shift() * p).exp()

    def log1p_shift(self) -> "Series":
        return (self - 1).log1p()
