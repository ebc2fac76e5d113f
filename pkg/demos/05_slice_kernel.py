"""Kernel structure of a locally nilpotent derivation with a slice.

Run:  python3 demos/05_slice_kernel.py
"""

import json
import random

from venlab import Polynomial, VarContext
from venlab.derivation import Derivation, dixmier_projection
from venlab.slice_kernel import (
    certify_polynomial_ring,
    check_stably_free_shadow,
    kernel_from_slice,
)

ctx = VarContext(["x", "y", "z"])
x, y, z = (Polynomial.variable(ctx, n) for n in "xyz")

# D(x) = 0, D(y) = x, D(z) = 1 has the slice s = z; the Dixmier
# projection pi(f) = sum (-s)^r D^r(f) / r! retracts onto Ker D.
D = Derivation(ctx, {"y": x, "z": Polynomial.one(ctx)})
print("pi(y) =", dixmier_projection(D, z, y))

result = kernel_from_slice(D, z)
result = check_stably_free_shadow(certify_polynomial_ring(result))
print(json.dumps(result.to_dict(), indent=2, sort_keys=True))

# A randomized instance over R = Q[a,b], built by conjugating the basic
# derivation with a triangular automorphism (see tests/helpers.py).
import sys, pathlib
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))
from helpers import random_triangular_slice_instance

rng = random.Random(9)
D2, s2 = random_triangular_slice_instance(rng)
print("\nrandom instance over Q[a,b]:")
for name, img in D2.images.items():
    print("  D(%s) = %s" % (name, img))
print("  slice s =", s2)
r2 = check_stably_free_shadow(certify_polynomial_ring(kernel_from_slice(D2, s2)))
print("  generation:", r2.generation_verdict,
      "| pair:", r2.pair_verdict, r2.two_generator_subset,
      "| shadow:", r2.stably_free_verdict)
