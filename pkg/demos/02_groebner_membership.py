"""Groebner bases, ideal and subalgebra membership with witnesses.

Run:  python3 demos/02_groebner_membership.py
"""

from venlab import (
    MonomialOrder,
    Polynomial,
    VarContext,
    buchberger,
    ideal_member,
    normal_form,
    parse_polynomial,
    subalgebra_member,
)

ctx = VarContext(["x", "y"])
f1 = parse_polynomial("x y - 1", ctx)
f2 = parse_polynomial("y^2 - 1", ctx)

gb = buchberger([f1, f2], MonomialOrder("lex"))
print("reduced lex basis of (xy - 1, y^2 - 1):")
for g in gb.generators:
    print("   ", g)

h = parse_polynomial("x^2 y - x y^2 + x - y", ctx)
print("normal form of", h, "=", normal_form(h, gb))
print("member of the ideal?", ideal_member(h, [f1, f2]))

# Subalgebra membership: z^5 lies in Q[z^2, z^3], z itself does not.
zc = VarContext(["z"])
z = Polynomial.variable(zc, "z")
res = subalgebra_member(z ** 5, [z ** 2, z ** 3])
print("z^5 in Q[z^2, z^3]?", res.status, "| witness:", res.witness,
      "(tags stand for the generators in order)")
print("z   in Q[z^2, z^3]?", subalgebra_member(z, [z ** 2, z ** 3]).status)

# Membership over a localized coefficient ring: z = (xz)/x needs 1/x.
lc = VarContext(["x", "z"], coeff_block=["x"])
xz = parse_polynomial("x z", lc)
target = Polynomial.variable(lc, "z")
print("z in Q[x][xz]?   ", subalgebra_member(target, [xz]).status)
print("z in Q[x]_x[xz]? ",
      subalgebra_member(target, [xz], invert="x").status)
