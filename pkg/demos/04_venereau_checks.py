"""Venereau-type polynomials: construction and all four machine checks.

Run:  python3 demos/04_venereau_checks.py
"""

from venlab.venereau import build, family, run_checks

# The classical first Venereau polynomial h = y + x v.
v1 = family("venereau", 1)
print("spec", v1.label)
print("  lambda =", v1.lam)
print("  p      =", v1.p)
print("  v      =", v1.v)
print("  w      =", v1.w)
print("  h      =", v1.h)

# residual: h = y at x = 0;  localized: y, z, u in Q[x]_x[h, v, w];
# jacobian: det d(h,v,w)/d(y,z,u) = c x^m;  fibers: per-point checks.
for report in run_checks(v1, samples=[(0, 0), (0, 1), (1, 0), (2, 1)]):
    print("%-10s %s" % (report.check, report.verdict))
    if report.check == "jacobian":
        print("    det = %s * x^%s" % (report.witnesses["c"], report.witnesses["m"]))
    if report.check == "localized":
        print("    witness for z:", report.witnesses["z"]["expression"][:70], "...")

# The same machinery on a generic instance with nonzero r, s.
generic = build(r="x", s="1", Q="V + W", label="generic")
verdicts = [r.verdict for r in run_checks(generic, checks=("residual", "localized", "jacobian"))]
print("generic (r=x, s=1, Q=V+W):", verdicts)

# Negative control: a corrupted h must fail the residual check.
broken = v1.corrupted(h=v1.h + v1.v)
print("corrupted spec residual:", run_checks(broken, checks=("residual",))[0].verdict)
