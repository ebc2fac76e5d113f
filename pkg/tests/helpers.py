"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check:
membership by degree-bounded exact linear algebra (no Groebner bases),
determinants by permutation expansion (no cofactor recursion), shifts by
direct substitution (no Taylor iteration).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from venlab.poly import Polynomial, PolyMap, VarContext, mono_mul
from venlab.derivation import Derivation


# ---------------------------------------------------------------------------
# random generation (seeded by the caller)

def random_polynomial(rng: random.Random, ctx: VarContext, max_degree: int,
                      max_terms: int = 5, coeff_range: int = 5,
                      allow_zero: bool = True) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        mono = _random_monomial(rng, ctx.arity, max_degree)
        c = rng.randint(-coeff_range, coeff_range)
        if rng.random() < 0.2:
            c = Fraction(c, rng.randint(1, 4))
        terms[mono] = terms.get(mono, 0) + c
    return Polynomial(ctx, {m: c for m, c in terms.items() if c})


def _random_monomial(rng, arity, max_degree):
    degree = rng.randint(0, max_degree)
    mono = [0] * arity
    for _ in range(degree):
        mono[rng.randrange(arity)] += 1
    return tuple(mono)


def monomials_up_to(arity: int, max_degree: int):
    """All exponent tuples with total degree <= max_degree."""
    for mono in itertools.product(range(max_degree + 1), repeat=arity):
        if sum(mono) <= max_degree:
            yield mono


# ---------------------------------------------------------------------------
# oracle 1: degree-bounded ideal membership by exact linear algebra

def ideal_member_linear(f: Polynomial, gens, extra_degree: int = 6) -> bool:
    """Is f = sum c_i g_i solvable with deg(c_i) <= deg(f) + extra_degree?

    Solves the exact linear system over Q by sparse incremental row
    echelon; no Groebner machinery involved.
    """
    ctx = f.ctx
    fdeg = f.degree()
    bound = (int(fdeg) if f.terms else 0) + extra_degree
    columns = []
    for g in gens:
        if g.is_zero():
            continue
        for mono in monomials_up_to(ctx.arity, bound):
            col = {}
            for gm, gc in g.terms.items():
                col[mono_mul(mono, gm)] = col.get(mono_mul(mono, gm), 0) + gc
            columns.append(col)
    # equations: one per monomial appearing anywhere
    eq_monos = set(f.terms)
    for col in columns:
        eq_monos.update(col)
    eq_index = {m: i for i, m in enumerate(sorted(eq_monos))}
    # transpose to rows
    rows = [{} for _ in eq_index]
    for j, col in enumerate(columns):
        for m, c in col.items():
            rows[eq_index[m]][j] = rows[eq_index[m]].get(j, 0) + c
    rhs = [Fraction(0)] * len(eq_index)
    for m, c in f.terms.items():
        rhs[eq_index[m]] = c
    return _solvable(rows, rhs)


def _solvable(rows, rhs) -> bool:
    """Consistency of the sparse system rows * x = rhs over Q."""
    pivots = {}  # column -> (row dict, rhs value)
    for row, b in zip(rows, rhs):
        row = {j: Fraction(c) for j, c in row.items() if c}
        b = Fraction(b)
        while True:
            row = {j: c for j, c in row.items() if c}
            if not row:
                if b != 0:
                    return False
                break
            j = min(row)
            if j not in pivots:
                inv = Fraction(1) / row[j]
                pivots[j] = ({k: c * inv for k, c in row.items()}, b * inv)
                break
            prow, pb = pivots[j]
            factor = row[j]
            for k, c in prow.items():
                row[k] = row.get(k, Fraction(0)) - factor * c
            b -= factor * pb
    return True


# ---------------------------------------------------------------------------
# oracle 2: determinant by permutation expansion

def permutation_det(mat) -> Polynomial:
    n = len(mat)
    ctx = mat[0][0].ctx
    total = Polynomial.zero(ctx)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = Polynomial.constant(ctx, sign)
        for i in range(n):
            prod = prod * mat[i][perm[i]]
        total = total + prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# oracle 3: shift by direct substitution

def shifted_by_substitution(f: Polynomial) -> Polynomial:
    """f(t1 + e1, ..., tn + en) computed by plain substitution."""
    from venlab.derivation import SHIFT_PREFIX, shift_context
    ext = shift_context(f.ctx)
    images = {}
    for name in f.ctx.names:
        img = Polynomial.variable(ext, name)
        if name in f.ctx.fiber_names:
            img = img + Polynomial.variable(ext, SHIFT_PREFIX + name)
        images[name] = img
    return f.rename_context(ext).substitute(images)


# ---------------------------------------------------------------------------
# random triangular derivations with synthetic slices

#: Context for the slice-kernel batteries: R = Q[a,b], fiber x,y,z.
SLICE_CTX = VarContext(["a", "b", "x", "y", "z"], coeff_block=["a", "b"])


def random_triangular_slice_instance(rng: random.Random,
                                     ctx: VarContext = SLICE_CTX,
                                     max_degree: int = 2):
    """A locally nilpotent triangular derivation with a known slice.

    Construction: start from the base derivation D0 with D0(x) = 0,
    D0(y) = f(a,b,x), D0(z) = 1 (slice z), then conjugate by a random
    triangular automorphism  phi: x -> x, y -> y + q(a,b,x),
    z -> z + t(a,b,x,y).  The conjugate D = phi^-1 D0 phi is again
    locally nilpotent and has the exact slice s = phi^-1(z).
    """
    a, b, x, y, z = (Polynomial.variable(ctx, n) for n in ("a", "b", "x", "y", "z"))

    sub = VarContext(["a", "b", "x"])
    f = random_polynomial(rng, sub, max_degree, max_terms=2).rename_context(ctx)
    suby = VarContext(["a", "b", "x", "y"])
    q = random_polynomial(rng, sub, max_degree, max_terms=2).rename_context(ctx)
    t = random_polynomial(rng, suby, max_degree, max_terms=2).rename_context(ctx)

    phi = PolyMap(ctx, ctx, {
        "a": a, "b": b, "x": x, "y": y + q, "z": z + t,
    })
    y_inv = y - q
    t_inv = t.substitute({"y": y_inv})
    phi_inv = PolyMap(ctx, ctx, {
        "a": a, "b": b, "x": x, "y": y_inv, "z": z - t_inv,
    })
    assert phi_inv.compose(phi).images["y"] == y
    assert phi_inv.compose(phi).images["z"] == z

    base = Derivation(ctx, {
        "x": Polynomial.zero(ctx),
        "y": f,
        "z": Polynomial.one(ctx),
    })
    images = {n: phi_inv(base(phi.images[n])) for n in ("x", "y", "z")}
    D = Derivation(ctx, images)
    s = phi_inv(z)
    return D, s
