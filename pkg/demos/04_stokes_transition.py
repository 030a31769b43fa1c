"""How the exponentially small term switches on as arg a crosses zero.

On the ray arg a = 0 the k-th exponential carries the multiplier -sin(pi nu).
Off the ray it moves towards exp(-+ i pi (nu + 1/2)) over an angular width of
order |X_k|^{-1/2}, following an error function.  Away from the axis the full
remainder is evaluated with exact terminants and compared with direct
summation.
"""

from fractions import Fraction

from besselsum import Params, PrecisionContext, evaluate, stokes_multiplier
from besselsum.expansion import stokes_erf_argument, to_fraction
from besselsum.oracle import s_direct

ctx = PrecisionContext(digits=40)
mp = ctx.mp
nu, a = Fraction(1, 6), Fraction(1, 5)
X1 = mp.pi**2 / ctx.mpf(a)
width = mp.sqrt(2 / X1)

print(f"|X_1| = {mp.nstr(X1, 8)}, transition width ~ {mp.nstr(width, 5)} rad")
for t in range(-5, 6):
    theta = t * width
    p = Params(nu, a, to_fraction(theta))
    m = stokes_multiplier(p, 1, ctx)
    print(f"  theta {mp.nstr(theta, 5):>9}  erf arg {mp.nstr(stokes_erf_argument(p, 1, ctx), 4):>6}  multiplier {mp.nstr(m, 6)}")

print("off-axis evaluation against the direct sum:")
for theta in ("0.1", "0.4", "0.8"):
    p = Params(nu, a, theta)
    b = evaluate(p, 5, 1, ctx)
    direct = s_direct(p, ctx).value
    print(f"  theta {theta}: |total - direct| = {mp.nstr(abs(b.total - direct), 3)}, "
          f"|k=1 term| = {mp.nstr(abs(b.exp_terms[0]), 3)}")
