"""Split S_nu(a) into its algebraic part and its exponentially small part.

For small a the sum is dominated by the residue term H(a; nu) and an
algebraic series in (a / 8 pi^2)^2.  Subtracting both from the directly
summed value leaves S-hat, which is of order exp(-pi^2 / a).
"""

from besselsum import Params, PrecisionContext, algebraic_sum, h_term, plan_truncation
from besselsum.oracle import digits_needed, s_direct, s_hat

ctx = PrecisionContext(digits=40)
mp = ctx.mp

for nu, a in [("0", "0.5"), ("1/6", "0.2"), ("3/2", "0.1")]:
    p = Params(nu, a)
    plans = plan_truncation(p, 12, ctx)
    direct = s_direct(p, ctx)
    h = h_term(p, ctx)
    alg = algebraic_sum(p, plans, ctx)
    print(f"nu = {nu}, a = {a}")
    print(f"  direct sum      {mp.nstr(direct.value, 25)}  ({direct.terms_used} terms)")
    print(f"  H(a; nu)        {mp.nstr(h, 25)}")
    print(f"  algebraic sum   {mp.nstr(alg, 25)}")
    print(f"  N_1, alpha      {plans[0].N}, {mp.nstr(plans[0].alpha, 12)}")
    # the difference needs about Re(X_1)/ln 10 extra digits
    print(f"  S-hat           {mp.nstr(s_hat(p, plans, ctx), 15)}  (worked at {digits_needed(p, ctx)} digits)")
    print(f"  exp(-X_1)       {mp.nstr(mp.exp(-plans[0].X), 5)}")
