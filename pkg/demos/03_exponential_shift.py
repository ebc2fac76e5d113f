"""Divided Taylor terms, exponential shifts and automorphisms.

Run:  python3 demos/03_exponential_shift.py
"""

from venlab import Polynomial, VarContext
from venlab.derivation import (
    Derivation,
    exp_automorphism,
    exp_shift,
    taylor_term,
)

ctx = VarContext(["t"])
t = Polynomial.variable(ctx, "t")

# The order-r terms of f(t + e): taylor_term(f, r) is E^r(f) for the
# shift operator E = e * d/dt, so sum_r taylor_term(f, r)/r! = f(t+e).
f = t ** 3
for r in range(5):
    print("E^%d(t^3) =" % r, taylor_term(f, r))
print("exp_shift(t^3) =", exp_shift(f))

# Exponential automorphism of a triangular derivation: with
# D(y) = x, D(z) = y the map exp(D) sends z to z + y + x/2.
c3 = VarContext(["x", "y", "z"])
x, y, z = (Polynomial.variable(c3, n) for n in "xyz")
D = Derivation(c3, {"y": x, "z": y})
print("nilpotency indices:", D.certify_nilpotent().indices)

phi = exp_automorphism(D, Polynomial.one(c3))
inv = exp_automorphism(D, -Polynomial.one(c3))
print("exp(D): y ->", phi(y), ",  z ->", phi(z))
print("inverse check on z y^2:", inv(phi(z * y ** 2)) == z * y ** 2)
