"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are `fractions.Fraction`, so every operation is exact and
canonical (gcd-reduced, positive denominator) by construction.  Monomials
are exponent tuples, one slot per variable of a `VarContext`.  A context
may designate a prefix of its variables as the coefficient block: those
play the role of the base ring R in R[fiber variables] and are treated as
constants by derivations.

All values are immutable after construction; operations return new
objects and are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

#: Degree of the zero polynomial.
NEG_INFINITY = float("-inf")

#: Hard cap on a single exponent.  Desk-scale computations stay far below
#: this; exceeding it means something is catastrophically wrong.
EXPONENT_LIMIT = 2**62

#: Identifiers starting with this prefix are reserved for internally
#: generated variables (shift variables, tags, inverted copies).  The
#: expression parser rejects them in user input.
RESERVED_PREFIX = "_"

Scalar = Union[int, Fraction]


class ContextMismatchError(ValueError):
    """Two operands live in different variable contexts."""


class ExponentOverflowError(OverflowError):
    """An exponent exceeded EXPONENT_LIMIT."""


class VarContext:
    """An ordered list of distinct variable names with a coefficient block.

    The coefficient block is a (possibly empty) prefix of the names; its
    variables form the base ring over which derivations are linear.
    """

    __slots__ = ("names", "coeff_block", "_index")

    def __init__(self, names: Sequence[str], coeff_block: Sequence[str] = ()):
        names = tuple(names)
        coeff_block = tuple(coeff_block)
        if not all(n and n.isascii() and n.replace("_", "a").isidentifier() for n in names):
            raise ValueError("variable names must be nonempty ASCII identifiers: %r" % (names,))
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        if names[: len(coeff_block)] != coeff_block:
            raise ValueError("coefficient block %r is not a prefix of %r" % (coeff_block, names))
        self.names = names
        self.coeff_block = coeff_block
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def arity(self) -> int:
        return len(self.names)

    @property
    def fiber_names(self) -> tuple:
        """Variables outside the coefficient block."""
        return self.names[len(self.coeff_block):]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r in context %r" % (name, self.names))

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarContext)
            and self.names == other.names
            and self.coeff_block == other.coeff_block
        )

    def __hash__(self) -> int:
        return hash((self.names, self.coeff_block))

    def __repr__(self) -> str:
        if self.coeff_block:
            return "VarContext(%r, coeff_block=%r)" % (list(self.names), list(self.coeff_block))
        return "VarContext(%r)" % (list(self.names),)

    def extend(self, extra: Sequence[str], coeff_block: Sequence[str] = None) -> "VarContext":
        """Context with `extra` names appended; coefficient block kept unless given."""
        return VarContext(
            self.names + tuple(extra),
            self.coeff_block if coeff_block is None else coeff_block,
        )


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mono_mul(a: tuple, b: tuple) -> tuple:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e > EXPONENT_LIMIT:
            raise ExponentOverflowError("exponent %d exceeds limit" % e)
    return out


def mono_divides(a: tuple, b: tuple) -> bool:
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Total order on monomials, compatible with multiplication, 1 minimal.

    Kinds:
      * ``lex``      plain lexicographic on the exponent vector;
      * ``grevlex``  graded reverse lexicographic (the default);
      * ``elim``     block elimination order: grevlex on the first
        ``block_split`` variables, ties broken by grevlex on the rest.
        Monomials containing an eliminated (first-block) variable compare
        above all monomials free of them.
    """

    __slots__ = ("kind", "block_split")

    def __init__(self, kind: str = "grevlex", block_split: int = 0):
        if kind not in ("lex", "grevlex", "elim"):
            raise ValueError("unknown monomial order kind %r" % kind)
        if kind == "elim" and block_split <= 0:
            raise ValueError("elimination order needs a positive block_split")
        self.kind = kind
        self.block_split = block_split

    def key(self, mono: tuple):
        """Sort key: bigger key = bigger monomial."""
        if self.kind == "lex":
            return mono
        if self.kind == "grevlex":
            return (sum(mono), tuple(-e for e in reversed(mono)))
        k = self.block_split
        head, tail = mono[:k], mono[k:]
        return (
            sum(head), tuple(-e for e in reversed(head)),
            sum(tail), tuple(-e for e in reversed(tail)),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block_split == other.block_split
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.block_split))

    def __repr__(self) -> str:
        if self.kind == "elim":
            return "MonomialOrder('elim', block_split=%d)" % self.block_split
        return "MonomialOrder(%r)" % self.kind

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        """Parse an order descriptor: 'lex', 'grevlex' or 'elim:<k>'."""
        if text.startswith("elim:"):
            return cls("elim", int(text.split(":", 1)[1]))
        return cls(text)


GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# polynomials

def _coerce(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficients must be int or Fraction, got %r" % type(c).__name__)


class Polynomial:
    """Immutable sparse polynomial over Q in a fixed VarContext."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[tuple, Scalar]):
        clean = {}
        arity = ctx.arity
        for mono, coeff in terms.items():
            coeff = _coerce(coeff)
            if coeff == 0:
                continue
            if len(mono) != arity:
                raise ValueError("monomial %r does not match arity %d" % (mono, arity))
            for e in mono:
                if e < 0 or e > EXPONENT_LIMIT:
                    raise ExponentOverflowError("bad exponent %r" % (e,))
            clean[mono] = coeff
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "Polynomial":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: VarContext, c: Scalar) -> "Polynomial":
        return cls(ctx, {(0,) * ctx.arity: c})

    @classmethod
    def one(cls, ctx: VarContext) -> "Polynomial":
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx: VarContext, name: str) -> "Polynomial":
        mono = [0] * ctx.arity
        mono[ctx.index(name)] = 1
        return cls(ctx, {tuple(mono): 1})

    @classmethod
    def variables(cls, ctx: VarContext) -> dict:
        """All generators as a name -> Polynomial dict (handy in tests)."""
        return {n: cls.variable(ctx, n) for n in ctx.names}

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        """The rational value of a constant polynomial."""
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial %s is not constant" % self)
        return next(iter(self.terms.values()))

    def degree(self, var: str = None):
        """Total degree, or degree in one variable; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INFINITY
        if var is None:
            return max(mono_deg(m) for m in self.terms)
        i = self.ctx.index(var)
        return max(m[i] for m in self.terms)

    def variables_used(self) -> set:
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(self.ctx.names[i])
        return used

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple:
        """(monomial, coefficient) of the maximal term under `order`."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def coefficient(self, mono: tuple) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        """Terms as (monomial, coefficient), descending in `order`."""
        return [(m, self.terms[m]) for m in sorted(self.terms, key=order.key, reverse=True)]

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                "contexts differ: %r vs %r" % (self.ctx, other.ctx))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return Polynomial(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if c == 0:
                return Polynomial.zero(self.ctx)
            return Polynomial(self.ctx, {m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.ctx, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _coerce(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------

    def partial(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to `var`."""
        i = self.ctx.index(var)
        terms = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            m = mono[:i] + (e - 1,) + mono[i + 1:]
            s = terms.get(m, 0) + c * e
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.ctx, terms)

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring-homomorphism image; unmentioned variables map to themselves.

        All image polynomials must share one target context (defaulting to
        this polynomial's own context when every variable is covered by an
        identity image).
        """
        target = None
        for g in images.values():
            if target is None:
                target = g.ctx
            elif g.ctx != target:
                raise ContextMismatchError("image polynomials live in different contexts")
        if target is None:
            target = self.ctx
        full = {}
        for name in self.ctx.names:
            if name in images:
                full[name] = images[name]
            else:
                full[name] = Polynomial.variable(target, name)  # raises if absent
        return _apply_images(self, [full[n] for n in self.ctx.names], target)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point covering every used variable."""
        total = Fraction(0)
        idx = [self.ctx.index(n) for n in self.ctx.names]
        vals = []
        for n in self.ctx.names:
            vals.append(_coerce(point[n]) if n in point else None)
        for mono, c in self.terms.items():
            v = Fraction(c)
            for i in idx:
                e = mono[i]
                if e:
                    if vals[i] is None:
                        raise KeyError("no value for variable %r" % self.ctx.names[i])
                    v *= vals[i] ** e
            total += v
        return total

    def rename_context(self, new_ctx: VarContext) -> "Polynomial":
        """The same polynomial viewed in a context containing all used variables."""
        perm = {}
        for i, n in enumerate(self.ctx.names):
            if n in new_ctx:
                perm[i] = new_ctx.index(n)
        terms = {}
        for mono, c in self.terms.items():
            out = [0] * new_ctx.arity
            for i, e in enumerate(mono):
                if e:
                    if i not in perm:
                        raise ContextMismatchError(
                            "variable %r is used but missing from the new context"
                            % self.ctx.names[i])
                    out[perm[i]] = e
            m = tuple(out)
            terms[m] = terms.get(m, 0) + c
        return Polynomial(new_ctx, terms)

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        from .parse import format_polynomial
        return format_polynomial(self)

    def __repr__(self) -> str:
        return "<Polynomial %s over %s>" % (self, ",".join(self.ctx.names))


def _apply_images(f: Polynomial, images: list, target: VarContext) -> Polynomial:
    """Evaluate f at the given per-variable images (ring homomorphism)."""
    power_cache = [{0: Polynomial.one(target)} for _ in images]

    def power(i, e):
        cache = power_cache[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * images[i]
        return cache[e]

    total = Polynomial.zero(target)
    for mono, c in f.terms.items():
        term = Polynomial.constant(target, c)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


class PolyMap:
    """A ring homomorphism between polynomial rings, given by generator images."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: VarContext, target: VarContext,
                 images: Mapping[str, Polynomial]):
        imgs = {}
        for name in source.names:
            if name not in images:
                raise ValueError("missing image for variable %r" % name)
            g = images[name]
            if g.ctx != target:
                raise ContextMismatchError("image of %r lives in the wrong context" % name)
            imgs[name] = g
        extra = set(images) - set(source.names)
        if extra:
            raise ValueError("images given for unknown variables %r" % sorted(extra))
        self.source = source
        self.target = target
        self.images = imgs

    @classmethod
    def identity(cls, ctx: VarContext) -> "PolyMap":
        return cls(ctx, ctx, {n: Polynomial.variable(ctx, n) for n in ctx.names})

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.source:
            raise ContextMismatchError("polynomial is not in the map's source context")
        return _apply_images(f, [self.images[n] for n in self.source.names], self.target)

    def compose(self, first: "PolyMap") -> "PolyMap":
        """self after first: (self.compose(first))(f) == self(first(f))."""
        if first.target != self.source:
            raise ContextMismatchError("maps are not composable")
        return PolyMap(first.source, self.target,
                       {n: self(g) for n, g in first.images.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self) -> str:
        body = ", ".join("%s -> %s" % (n, g) for n, g in self.images.items())
        return "<PolyMap %s>" % body


def jacobian_matrix(polys: Sequence[Polynomial], vars: Sequence[str]) -> list:
    """Matrix of partials d polys[i] / d vars[j]."""
    if not polys:
        raise ValueError("empty polynomial list")
    ctx = polys[0].ctx
    for p in polys:
        if p.ctx != ctx:
            raise ContextMismatchError("jacobian entries live in different contexts")
    if len(set(vars)) != len(vars):
        raise ValueError("jacobian variables must be distinct")
    return [[p.partial(v) for v in vars] for p in polys]


def jacobian_det(polys: Sequence[Polynomial], vars: Sequence[str]) -> Polynomial:
    """Exact determinant of the square Jacobian matrix of polys w.r.t. vars."""
    if len(polys) != len(vars):
        raise ValueError("need as many polynomials as variables")
    mat = jacobian_matrix(polys, vars)
    return matrix_det(mat)


def matrix_det(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    n = len(mat)
    for row in mat:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 1:
        return mat[0][0]
    ctx = mat[0][0].ctx
    total = Polynomial.zero(ctx)
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        cof = mat[0][j] * matrix_det(minor)
        total = total + (cof if j % 2 == 0 else -cof)
    return total
