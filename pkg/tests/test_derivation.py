"""Derivations, nilpotency certificates, Taylor/exponential operators."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from venlab.derivation import (
    DEFAULT_NILPOTENCY_CAP,
    Derivation,
    InvalidSliceError,
    KernelMembershipError,
    NotCertifiedError,
    SHIFT_PREFIX,
    Slice,
    dixmier_projection,
    exp_automorphism,
    exp_shift,
    format_derivation,
    parse_derivation,
    shift_context,
    taylor_term,
)
from venlab.parse import parse_polynomial
from venlab.poly import Polynomial, VarContext

from helpers import random_polynomial, shifted_by_substitution

CTX = VarContext(["x", "y", "z"])
X, Y, Z = (Polynomial.variable(CTX, n) for n in "xyz")


def triangular():
    # D(x) = 0, D(y) = x, D(z) = y: the basic triangular example
    return Derivation(CTX, {"y": X, "z": Y})


# ---------------------------------------------------------------------------
# application and Leibniz

def test_apply_on_generators():
    D = triangular()
    assert D(X).is_zero()
    assert D(Y) == X
    assert D(Z) == Y


def test_apply_is_a_derivation():
    rng = random.Random(31)
    D = triangular()
    for _ in range(25):
        f = random_polynomial(rng, CTX, 4)
        g = random_polynomial(rng, CTX, 4)
        assert D(f * g) == D(f) * g + f * D(g)
        assert D(f + g) == D(f) + D(g)


def test_constants_are_killed():
    ctx = VarContext(["a", "x", "y"], coeff_block=["a"])
    a, x, y = (Polynomial.variable(ctx, n) for n in ("a", "x", "y"))
    D = Derivation(ctx, {"y": a * x})
    assert D(a ** 3).is_zero()
    assert D(y) == a * x


def test_image_for_constant_rejected():
    ctx = VarContext(["a", "x"], coeff_block=["a"])
    with pytest.raises(ValueError):
        Derivation(ctx, {"a": Polynomial.one(ctx)})


def test_power_matches_iteration():
    D = triangular()
    f = Z ** 2
    assert D.power(f, 2) == D(D(f))
    assert D.power(f, 0) == f


# ---------------------------------------------------------------------------
# nilpotency certificates

def test_certify_triangular_indices():
    cert = triangular().certify_nilpotent()
    assert cert.certified
    assert cert.indices == {"x": 1, "y": 2, "z": 3}


def test_certify_single_partial():
    D = Derivation(CTX, {"z": Polynomial.one(CTX)})
    cert = D.certify_nilpotent()
    assert cert.certified
    assert cert.indices["z"] == 2


def test_certify_euler_like_is_undetermined():
    # D(z) = z never vanishes under iteration: the cap must report honestly
    D = Derivation(CTX, {"z": Z})
    cert = D.certify_nilpotent(cap=10)
    assert cert.status == "undetermined"
    assert cert.cap == 10


def test_uncertified_derivation_blocks_exponentials():
    D = Derivation(CTX, {"z": Z})
    with pytest.raises(NotCertifiedError):
        exp_automorphism(D, Polynomial.one(CTX))


def test_default_cap_is_reasonable():
    assert DEFAULT_NILPOTENCY_CAP >= 32


# ---------------------------------------------------------------------------
# Taylor terms and the exponential shift

def test_taylor_term_order_zero_is_f():
    f = Z ** 3 - 2 * Y
    assert taylor_term(f, 0) == f.rename_context(shift_context(CTX))


def test_taylor_term_cube():
    ctx = VarContext(["t"])
    t = Polynomial.variable(ctx, "t")
    ext = shift_context(ctx)
    e = Polynomial.variable(ext, SHIFT_PREFIX + "t")
    # E^3(t^3) = 3! e^3
    assert taylor_term(t ** 3, 3) == 6 * e ** 3
    assert taylor_term(t ** 3, 4).is_zero()


def test_exp_shift_square():
    ctx = VarContext(["t"])
    t = Polynomial.variable(ctx, "t")
    ext = shift_context(ctx)
    te = Polynomial.variable(ext, "t")
    e = Polynomial.variable(ext, SHIFT_PREFIX + "t")
    assert exp_shift(t ** 2) == te ** 2 + 2 * te * e + e ** 2


def test_exp_shift_matches_substitution_oracle():
    rng = random.Random(47)
    for _ in range(60):
        f = random_polynomial(rng, CTX, 5)
        assert exp_shift(f) == shifted_by_substitution(f)


def test_exp_shift_multiplicative():
    rng = random.Random(53)
    for _ in range(25):
        f = random_polynomial(rng, CTX, 4)
        g = random_polynomial(rng, CTX, 4)
        assert exp_shift(f * g) == exp_shift(f) * exp_shift(g)
        assert exp_shift(f + g) == exp_shift(f) + exp_shift(g)


def test_exp_shift_counit():
    # setting every shift variable to zero recovers f
    rng = random.Random(59)
    for _ in range(20):
        f = random_polynomial(rng, CTX, 5)
        ext = shift_context(CTX)
        zero = {SHIFT_PREFIX + n: Polynomial.zero(ext) for n in CTX.names}
        collapsed = exp_shift(f).substitute(zero)
        assert collapsed == f.rename_context(ext)


def test_exp_shift_coassociative():
    # shifting by a and then by e equals a single shift by a + e; the
    # first offsets become coefficient-block constants for the re-shift
    rng = random.Random(61)
    ext = shift_context(CTX)
    ctx3 = VarContext(["ax", "ay", "az", "x", "y", "z"],
                      coeff_block=["ax", "ay", "az"])
    ext3 = shift_context(ctx3)
    relabel = {SHIFT_PREFIX + n: Polynomial.variable(ctx3, "a" + n)
               for n in CTX.names}
    relabel.update({n: Polynomial.variable(ctx3, n) for n in CTX.names})
    for _ in range(10):
        f = random_polynomial(rng, CTX, 4)
        twice = exp_shift(exp_shift(f).substitute(relabel))
        merged = exp_shift(f).substitute({
            n: Polynomial.variable(ext3, n) for n in CTX.names
        } | {
            SHIFT_PREFIX + n:
                Polynomial.variable(ext3, "a" + n)
                + Polynomial.variable(ext3, SHIFT_PREFIX + n)
            for n in CTX.names
        })
        assert twice == merged


# ---------------------------------------------------------------------------
# exponential automorphisms

def test_exp_automorphism_translation():
    # exp(1 * d/dz) is the translation z -> z + 1
    D = Derivation(CTX, {"z": Polynomial.one(CTX)})
    phi = exp_automorphism(D, Polynomial.one(CTX))
    assert phi(Z) == Z + 1
    assert phi(Y) == Y


def test_exp_automorphism_triangular():
    D = triangular()
    phi = exp_automorphism(D, Polynomial.one(CTX))
    assert phi(Y) == Y + X
    assert phi(Z) == Z + Y + X / 2


def test_exp_automorphism_inverse():
    rng = random.Random(67)
    D = triangular()
    t = X ** 2 + 3  # in Ker D
    phi = exp_automorphism(D, t)
    inv = exp_automorphism(D, -t)
    for _ in range(15):
        f = random_polynomial(rng, CTX, 4)
        assert inv(phi(f)) == f
        assert phi(inv(f)) == f


def test_exp_automorphism_is_homomorphism():
    rng = random.Random(71)
    D = triangular()
    phi = exp_automorphism(D, X)
    for _ in range(15):
        f = random_polynomial(rng, CTX, 4)
        g = random_polynomial(rng, CTX, 4)
        assert phi(f * g) == phi(f) * phi(g)


def test_exp_parameter_must_be_in_kernel():
    D = triangular()
    with pytest.raises(KernelMembershipError):
        exp_automorphism(D, Z)


# ---------------------------------------------------------------------------
# slices and the Dixmier projection

def test_slice_check_accepts_and_rejects():
    D = Derivation(CTX, {"z": Polynomial.one(CTX)})
    Slice.check(D, Z)
    with pytest.raises(InvalidSliceError):
        Slice.check(D, Z ** 2)


def test_dixmier_basic_example():
    # D(y) = x, D(z) = 1, slice z: pi(y) = y - x z
    D = Derivation(CTX, {"y": X, "z": Polynomial.one(CTX)})
    assert dixmier_projection(D, Z, Y) == Y - X * Z
    assert dixmier_projection(D, Z, Z ** 2 + 1) == Polynomial.one(CTX)


def test_dixmier_properties():
    rng = random.Random(73)
    D = Derivation(CTX, {"y": X ** 2, "z": Polynomial.one(CTX)})
    s = Z
    for _ in range(20):
        f = random_polynomial(rng, CTX, 4)
        g = random_polynomial(rng, CTX, 4)
        pf = dixmier_projection(D, s, f)
        assert D(pf).is_zero()                                # lands in Ker D
        assert dixmier_projection(D, s, pf) == pf             # idempotent
        assert dixmier_projection(D, s, f * g) == pf * dixmier_projection(D, s, g)
    assert dixmier_projection(D, s, s).is_zero()              # pi(s) = 0
    kernel_elt = X ** 3 - 2
    assert dixmier_projection(D, s, kernel_elt) == kernel_elt  # fixes Ker D


# ---------------------------------------------------------------------------
# file format

def test_parse_derivation_with_constants_header():
    text = "# constants: a b\nD(x) = 0\nD(y) = a x\nD(z) = 1\n"
    D = parse_derivation(text)
    assert D.ctx.coeff_block == ("a", "b")
    assert D.ctx.fiber_names == ("x", "y", "z")
    a, x = (Polynomial.variable(D.ctx, n) for n in ("a", "x"))
    assert D.images["y"] == a * x


def test_derivation_format_round_trip():
    ctx = VarContext(["a", "x", "y"], coeff_block=["a"])
    D = Derivation(ctx, {"y": parse_polynomial("a x^2 - 1/2", ctx)})
    again = parse_derivation(format_derivation(D))
    assert again.ctx.names == ctx.names
    assert all(again.images[n] == D.images[n].rename_context(again.ctx)
               for n in ctx.fiber_names)


def test_parse_derivation_bad_line():
    with pytest.raises(ValueError):
        parse_derivation("d/dx = 1\n")


# ---------------------------------------------------------------------------
# hypothesis: shift oracle on arbitrary small polynomials

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)
monos = st.tuples(*(st.integers(min_value=0, max_value=3),) * 3)
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: Polynomial(CTX, d))


@settings(max_examples=80, deadline=None)
@given(polys)
def test_exp_shift_oracle_property(f):
    assert exp_shift(f) == shifted_by_substitution(f)
