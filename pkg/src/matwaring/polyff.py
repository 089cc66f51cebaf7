"""Dense univariate polynomials over a finite field.

Coefficients are element codes of a :class:`~matwaring.ff.FieldCtx`, stored
little-endian with no trailing zeros.  The zero polynomial has degree -1.
"""

import math
from collections import Counter

from .errors import DivideByZero, FieldMismatch


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, 1))

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, (c,))

    @classmethod
    def from_roots(cls, ctx, roots):
        """Monic polynomial prod (x - r)."""
        f = cls(ctx, (1,))
        for r in roots:
            f = f * cls(ctx, (ctx.neg(r), 1))
        return f

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)} over {self.ctx!r})"

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        add = self.ctx.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(self.ctx, [add(x, y) for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self):
        neg = self.ctx.neg
        return Poly(self.ctx, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    def scale(self, c):
        mul = self.ctx.mul
        return Poly(self.ctx, [mul(c, x) for x in self.coeffs])

    def __divmod__(self, other):
        if not other.coeffs:
            raise DivideByZero("polynomial division by zero")
        F = self.ctx
        r = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.lead)
        quot = [0] * max(len(r) - db, 0)
        b = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = F.mul(c, inv_lead)
            quot[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
        return Poly(F, quot), Poly(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        F = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.ctx
        return Poly(F, [F.mul(F.element(i), c) for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.ctx.inv(self.lead))

    def divides(self, other):
        return not (other % self).coeffs


def gcd(f, g):
    """Monic gcd (zero if both inputs are zero)."""
    while g.coeffs:
        f, g = g, f % g
    return f.monic()


def lcm(f, g):
    return (f * g // gcd(f, g)).monic()


def powmod(f, e, mod):
    result = Poly(f.ctx, (1,)) % mod
    f = f % mod
    while e:
        if e & 1:
            result = result * f % mod
        e >>= 1
        if e:
            f = f * f % mod
    return result


def poly_arith(op, *operands):
    """Uniform entry point for op in {add, mul, divmod, gcd, eval, derivative}."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "divmod":
        return divmod(operands[0], operands[1])
    if op == "gcd":
        return gcd(*operands)
    if op == "eval":
        return operands[0](operands[1])
    if op == "derivative":
        return operands[0].derivative()
    raise ValueError(f"unknown operation {op!r}")


def is_irreducible(f):
    """Irreducibility over the coefficient field via gcd(f, x^(q^i) - x)."""
    if f.degree < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    n = f.degree
    if n == 1:
        return True
    F = f.ctx
    x = Poly.x(F)
    h = x % f
    for _ in range(n // 2):
        h = powmod(h, F.q, f)
        if not gcd(f, h - x).is_one():
            return False
    return True


def roots_with_multiplicity(f):
    """All roots in the coefficient field as (root, multiplicity), sorted by code."""
    if f.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    F = f.ctx
    out = []
    if f.degree == 1:
        return [(F.neg(F.div(f.coeffs[0], f.coeffs[1])), 1)]
    remaining = f.degree
    for a in F.elements():
        if f(a) != 0:
            continue
        lin = Poly(F, (F.neg(a), 1))
        mult = 0
        while True:
            quo, rem = divmod(f, lin)
            if rem.coeffs:
                break
            f = quo
            mult += 1
        out.append((a, mult))
        remaining -= mult
        if remaining == 0 or f.degree < 1:
            break
    return out


def _pth_root(f):
    F = f.ctx
    e = F.q // F.p
    return Poly(F, [F.pow(c, e) for c in f.coeffs[:: F.p]])


def squarefree_decomposition(f):
    """Pairs (g, i) with f = lead * prod g**i, the g squarefree and coprime."""
    if f.degree < 1:
        return []
    f = f.monic()
    F = f.ctx
    out = []
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, j in squarefree_decomposition(_pth_root(c)):
            out.append((g, j * F.p))
    return out


def superelliptic_abs_irreducible(d, f):
    """Whether Y^d - f(X) stays irreducible over the algebraic closure.

    Uses the criterion gcd(d, d_1, ..., d_s) == 1 over the multiplicities of
    the distinct roots of f.  Over a perfect field every squarefree factor
    is separable, so the multiplicities in the closure are exactly the
    exponents of the squarefree decomposition.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if not f.coeffs:
        raise ValueError("f must be nonzero")
    mults = [i for _, i in squarefree_decomposition(f)]
    return math.gcd(d, *mults) == 1


def count_points_superelliptic(ctx, d, f):
    """Number of affine (x, y) in F_q^2 with y**d == f(x)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    fibre = Counter(ctx.pow(y, d) for y in ctx.elements())
    return sum(fibre.get(f(x), 0) for x in ctx.elements())


def format_poly(ctx, f):
    from .ff import format_element

    if not f.coeffs:
        return format_element(ctx, 0)
    if ctx.m == 1:
        return ",".join(str(c) for c in f.coeffs)
    return ";".join(format_element(ctx, c) for c in f.coeffs)


def parse_poly(ctx, text):
    """Comma-separated coefficients, little-endian.

    Over an extension field each coefficient is itself a comma list of
    digits; coefficients are then separated by ';'.
    """
    from .ff import parse_element

    text = "".join(text.split())
    if not text:
        raise FieldMismatch("empty polynomial")
    if ctx.m == 1:
        parts = text.split(",")
    else:
        parts = text.split(";")
    return Poly(ctx, [parse_element(ctx, s) for s in parts])
