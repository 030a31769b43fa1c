"""The coefficient families behind the exponentially small terms.

c_j(nu) come from an inverse factorial expansion of a gamma ratio, and
B_j(alpha, nu) fold in the large-order terminant coefficients.  Stored
polynomials cover j <= 4; the generators go further.  Two stored polynomials
differ from their printed versions, and both variants are kept.
"""

from fractions import Fraction

from besselsum import PrecisionContext
from besselsum.coefficients import C4_PRINTED, build_coefficients, c_closed, c_generate
from besselsum.terminant import A4_PRINTED, A_closed

ctx = PrecisionContext(digits=30)
mp = ctx.mp

print("exact c_j(1/6) from the generator:", [str(c) for c in c_generate(6, Fraction(1, 6))])
print("c_4(1/6): stored", float(c_closed(4, Fraction(1, 6))), "printed", float(C4_PRINTED(Fraction(1, 6))))
print("A_4(-1/2): stored", float(A_closed(4, Fraction(-1, 2))), "printed", float(A4_PRINTED(Fraction(-1, 2))))

alpha = 10 * mp.pi**2 - 98  # nu = 0, a = 0.1
for source in ("auto", "printed", "generated"):
    cs = build_coefficients(0, alpha, 5, ctx, source)
    print(f"B_j at nu=0, a=0.1 ({source:9s})", [mp.nstr(b, 11) for b in cs.B])

# beyond the stored range only the generator is available
cs = build_coefficients("1/6", "-0.8", 9, ctx)
print("B_0..B_8 at nu=1/6, alpha=-0.8:", [mp.nstr(b, 6) for b in cs.B])
