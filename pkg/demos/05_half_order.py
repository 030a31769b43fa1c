"""At nu = 1/2 the sum becomes (sqrt(pi)/a) sum exp(-a n^2) / n^2.

The algebraic double sum and the B_j series both vanish, leaving H(a; 1/2)
plus a c_j(1/2) series per exponential.  That series is itself asymptotic,
so its accuracy improves with M until the terms start to grow.
"""

from besselsum import Params, PrecisionContext, evaluate
from besselsum.oracle import s_half_closed_form

ctx = PrecisionContext(digits=40)
mp = ctx.mp

for a in ("0.2", "0.5"):
    ref = s_half_closed_form(a, ctx)
    print(f"a = {a}: closed form {mp.nstr(ref, 30)}")
    for M in (1, 3, 5, 8, 12, 16):
        b = evaluate(Params("1/2", a), M, None, ctx)
        err = abs(b.total - ref) / abs(b.exp_terms[0])
        print(f"  M = {M:2d}: error / first exponential = {mp.nstr(err, 3)}")
