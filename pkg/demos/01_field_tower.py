"""
The field tower F_8 inside F_64
===============================

Everything downstream runs on exact arithmetic in F_{q^2} with q = 2^(2e+1).
This walk-through builds the e = 1 context and pokes at the distinguished
elements and automorphisms it fixes.
"""

from btunital import build_context

ctx = build_context(1)
print(f"q = {ctx.q}, |F_q^2| = {ctx.big_order}, modulus = {ctx.modulus:#x}")

# epsilon is picked deterministically: the first element (as an integer)
# with eps^q = eps + 1 whose delta = eps^2 + eps is a subfield element
# other than 1 with absolute trace 1.
eps, delta = ctx.epsilon, ctx.delta
print(f"epsilon = {eps:#x}, delta = {delta:#x}")
print("eps^q == eps + 1:", ctx.frobenius(eps, 3) == eps ^ 1)
print("delta in F_q:", ctx.in_subfield(delta), " trace(delta):", ctx.trace_abs(delta))

# sigma = 2^(e+1) squares to the squaring map, but only on the subfield.
print("\nsigma =", ctx.sigma_exp)
for x in ctx.subfield():
    assert ctx.sigma(ctx.sigma(x)) == ctx.mul(x, x)
print("x^(sigma*sigma) == x^2 for all x in F_8: True")

# The four exponent maps used by the feet analysis are permutations of F_q
# with closed-form inverses.
report = ctx.exponent_inverse_check()
for pair in report["pairs"]:
    print(f"x^{pair['exponent']} inverted by x^{pair['inverse']}: {pair['ok']}")

# Every element of F_64 splits uniquely over the basis {1, epsilon}.
x = 0x2f
x1, x2 = ctx.decompose(x)
print(f"\n{x:#x} = {x1:#x} + {x2:#x} * epsilon ->",
      ctx.recompose(x1, x2) == x)
