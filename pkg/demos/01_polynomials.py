"""Exact sparse polynomial arithmetic over Q.

Run:  python3 demos/01_polynomials.py
"""

from fractions import Fraction

from venlab import Polynomial, VarContext, jacobian_det, parse_polynomial

# A context fixes the variable names; an optional leading coefficient
# block marks variables treated as constants by derivations.
ctx = VarContext(["x", "y", "z"])
x, y, z = (Polynomial.variable(ctx, n) for n in "xyz")

f = parse_polynomial("1/2 x^2 y - z + 3", ctx)
g = (x + y) * (x - y)

print("f          =", f)
print("g          =", g)
print("f * g      =", f * g)
print("df/dx      =", f.partial("x"))
print("f(1,2,1/3) =", f.evaluate({"x": 1, "y": 2, "z": Fraction(1, 3)}))

# Substitution is a ring homomorphism; here the shear y -> y + x z.
sheared = f.substitute({"y": y + x * z})
print("f(y -> y + xz) =", sheared)

# Jacobian determinant of a triangular system is 1.
print("jacobian of (x, y + xz, z):",
      jacobian_det([x, y + x * z, z], ["x", "y", "z"]))
