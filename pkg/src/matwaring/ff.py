"""Arithmetic in finite fields F_q with q = p^m.

Field elements are plain Python ints.  In an extension of degree d over a
base field with Q elements, the int ``c_0 + c_1*Q + ... + c_{d-1}*Q^(d-1)``
stands for ``c_0 + c_1*t + ... + c_{d-1}*t^(d-1)`` reduced modulo the
defining polynomial, where every ``c_i`` is itself a base-field code.  For
fields built by :func:`make_field` the base is the prime field, so the codes
are exactly the base-p digit vectors of the text encoding.  Codes 0 and 1
are the additive and multiplicative identities in every field.
"""

import math
from functools import lru_cache
from itertools import product

from .errors import BadModulus, DivideByZero, NotPrime

# log/exp tables are built for fields up to this size
TABLE_LIMIT = 1 << 20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n):
    """Prime factorization of n >= 1 as a tuple of (prime, exponent)."""
    out = []
    for r in (2, 3):
        if n % r == 0:
            e = 0
            while n % r == 0:
                n //= r
                e += 1
            out.append((r, e))
    r = 5
    while r * r <= n:
        for c in (r, r + 2):
            if n % c == 0:
                e = 0
                while n % c == 0:
                    n //= c
                    e += 1
                out.append((c, e))
        r += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class FieldCtx:
    """A finite field.  Immutable once constructed; safe to share.

    Attributes: ``p`` (characteristic), ``m`` (degree over F_p), ``q``,
    ``base`` (subfield the element codes are built from, None for F_p),
    ``degree`` (degree over ``base``), ``modulus`` (monic defining
    polynomial over ``base`` as a little-endian tuple of base codes, None
    for F_p) and ``generator`` (code of a primitive element).
    """

    p = m = q = degree = generator = None
    base = modulus = None

    def _setup(self, tables):
        self._log = None
        self._exp = None
        self._memo = {}
        self._tables_allowed = tables and self.q <= TABLE_LIMIT
        self.generator = self._find_generator()

    # -- identity -----------------------------------------------------------
    def key(self):
        base_key = self.base.key() if self.base is not None and self.base.base is not None else None
        return (self.p, self.m, self.modulus, base_key)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.modulus is None:
            return f"F_{self.p}"
        return f"F_{self.q}[mod={self.modulus}]"

    def __reduce__(self):
        return (_rebuild, (self._recipe(),))

    def _recipe(self):
        if self.base is None:
            return (self.p,)
        return (self.base._recipe(), self.modulus)

    # -- shared helpers -----------------------------------------------------
    def elements(self):
        return range(self.q)

    def element(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, xs, ys):
        add, mul = self.add, self.mul
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc = add(acc, mul(x, y))
        return acc

    def _find_generator(self):
        if self.q == 2:
            return 1
        n = self.q - 1
        primes = [r for r, _ in factorize(n)]
        # codes below Q are base-field elements and never primitive
        start = self.Q if self.degree > 1 else 2
        for g in range(start, self.q):
            if all(self._pow_plain(g, n // r) != 1 for r in primes):
                return g
        raise BadModulus(f"no primitive element found; modulus {self.modulus} is reducible")

    def _build_tables(self):
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [None] * self.q
        x = 1
        g = self.generator
        for i in range(n):
            exp[i] = x
            exp[i + n] = x
            log[x] = i
            x = self._mul_plain(x, g)
        self._exp, self._log = exp, log

    def has_tables(self):
        if self._log is None and self._tables_allowed:
            self._build_tables()
        return self._log is not None

    def dlog(self, a):
        """Discrete logarithm of nonzero a to the base ``generator``."""
        if a == 0:
            raise DivideByZero("discrete log of zero")
        if self.has_tables():
            return self._log[a]
        return bsgs_log(self, a)

    def gen_power(self, e):
        if self.has_tables():
            return self._exp[e % (self.q - 1)]
        return self.pow(self.generator, e % (self.q - 1))

    # -- digits -------------------------------------------------------------
    def to_digits(self, a):
        """Coefficient vector over ``base`` (over F_p for make_field fields)."""
        if self.base is None:
            return [a]
        Q = self.Q
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, Q)
            out.append(r)
        return out

    def from_digits(self, digits):
        if self.base is None:
            (a,) = digits
            return a % self.p
        a = 0
        for d in reversed(digits):
            a = a * self.Q + d
        return a

    def extend(self, modulus, tables=False):
        """Extension ``self[t]/(modulus)``; modulus is a monic tuple of codes."""
        return ExtensionField(self, tuple(modulus), tables=tables)


class PrimeField(FieldCtx):
    def __init__(self, p, tables=True):
        self.p = p
        self.m = 1
        self.q = p
        self.Q = p
        self.degree = 1
        self._setup(tables)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    _mul_plain = mul

    def inv(self, a):
        if a == 0:
            raise DivideByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    _pow_plain = pow

    def dot(self, xs, ys):
        return sum(map(int.__mul__, xs, ys)) % self.p


class ExtensionField(FieldCtx):
    def __init__(self, base, modulus, tables=True):
        if len(modulus) < 3 or modulus[-1] != 1:
            raise BadModulus("modulus must be monic of degree >= 2")
        self.base = base
        self.p = base.p
        self.Q = base.q
        self.degree = len(modulus) - 1
        self.m = base.m * self.degree
        self.q = base.q ** self.degree
        self.modulus = tuple(modulus)
        self._prime_base = base.base is None
        self._setup(tables)
        if self._tables_allowed:
            self._build_tables()

    def _split(self, a):
        Q = self.Q
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, Q)
            out.append(r)
        return out

    def add(self, a, b):
        if self._prime_base:
            p = self.p
            out = 0
            scale = 1
            while a or b:
                a, x = divmod(a, p)
                b, y = divmod(b, p)
                out += (x + y) % p * scale
                scale *= p
            return out
        B = self.base
        return self.from_digits([B.add(x, y) for x, y in zip(self._split(a), self._split(b))])

    def neg(self, a):
        if self._prime_base:
            p = self.p
            out = 0
            scale = 1
            while a:
                a, x = divmod(a, p)
                out += (-x % p) * scale
                scale *= p
            return out
        B = self.base
        return self.from_digits([B.neg(x) for x in self._split(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_plain(self, a, b):
        d = self.degree
        mod = self.modulus
        if self._prime_base:
            p = self.p
            if d == 2:
                a1, a0 = divmod(a, p)
                b1, b0 = divmod(b, p)
                c2 = a1 * b1
                c0 = a0 * b0 - c2 * mod[0]
                c1 = a0 * b1 + a1 * b0 - c2 * mod[1]
                return (c1 % p) * p + c0 % p
            da, db = self._split(a), self._split(b)
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            for i in range(2 * d - 2, d - 1, -1):
                c = prod[i] % p
                if c:
                    for j in range(d):
                        prod[i - d + j] -= c * mod[j]
            return self.from_digits([c % p for c in prod[:d]])
        B = self.base
        da, db = self._split(a), self._split(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d):
                    if mod[j]:
                        prod[i - d + j] = B.sub(prod[i - d + j], B.mul(c, mod[j]))
        return self.from_digits(prod[:d])

    def _pow_plain(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_plain(result, a)
            e >>= 1
            if e:
                a = self._mul_plain(a, a)
        return result

    def mul(self, a, b):
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_plain(a, b)

    def inv(self, a):
        if a == 0:
            raise DivideByZero("inverse of zero")
        if self._log is not None:
            n = self.q - 1
            return self._exp[(n - self._log[a]) % n]
        return self._pow_plain(a, self.q - 2)

    def pow(self, a, e):
        if self._log is not None:
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[self._log[a] * e % (self.q - 1)]
        return self._pow_plain(a, e)


def _rebuild(recipe):
    if len(recipe) == 1:
        return make_field(recipe[0])
    base_recipe, modulus = recipe
    base = _rebuild(base_recipe)
    if base.base is None:
        return make_field(base.p, len(modulus) - 1, modulus)
    return base.extend(modulus)


def bsgs_log(ctx, a):
    """Baby-step/giant-step discrete log of nonzero a to ``ctx.generator``.

    The baby-step table is memoised on the context.
    """
    if a == 0:
        raise DivideByZero("discrete log of zero")
    n = ctx.q - 1
    memo = ctx._memo.get("bsgs")
    if memo is None:
        step = math.isqrt(n) + 1
        baby = {}
        x = 1
        for j in range(step):
            baby.setdefault(x, j)
            x = ctx.mul(x, ctx.generator)
        giant = ctx.inv(ctx.pow(ctx.generator, step))
        memo = ctx._memo["bsgs"] = (step, baby, giant)
    step, baby, giant = memo
    gamma = a
    for i in range(step + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * step + j) % n
        gamma = ctx.mul(gamma, giant)
    raise ValueError(f"{a} is not in the multiplicative group")  # unreachable for valid codes


@lru_cache(maxsize=None)
def make_field(p, m=1, modulus=None):
    """Build F_{p^m}.

    ``modulus`` is the little-endian coefficient tuple (ints mod p) of a
    monic irreducible polynomial of degree m.  When omitted and m > 1 the
    lexicographically smallest such polynomial is used, comparing
    coefficient vectors from the constant term up.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1:
            raise BadModulus(f"modulus must have degree {m}")
        if any(not 0 <= c < p for c in modulus):
            raise BadModulus("modulus coefficients must lie in [0, p)")
        if modulus[-1] != 1:
            raise BadModulus("modulus must be monic")
    if m == 1:
        return PrimeField(p)
    from .polyff import Poly, is_irreducible

    fp = make_field(p)
    if modulus is None:
        for low in product(range(p), repeat=m):
            if low[0] == 0:
                continue
            if is_irreducible(Poly(fp, low + (1,))):
                modulus = low + (1,)
                break
    elif not is_irreducible(Poly(fp, modulus)):
        raise BadModulus(f"modulus {modulus} is reducible over F_{p}")
    return ExtensionField(fp, modulus)


def arith(ctx, op, *operands):
    """Uniform entry point: op in {add, sub, mul, neg, inv, pow}."""
    if op == "pow":
        a, e = operands
        if e < 0:
            raise ValueError("pow exponent must be nonnegative")
        return ctx.pow(a, e)
    if op in ("neg", "inv"):
        return getattr(ctx, op)(*operands)
    if op in ("add", "sub", "mul"):
        return getattr(ctx, op)(*operands)
    raise ValueError(f"unknown operation {op!r}")


def is_kth_power(ctx, a, k):
    if k < 1:
        raise ValueError("k must be >= 1")
    if a == 0:
        return True
    n = ctx.q - 1
    return ctx.pow(a, n // math.gcd(k, n)) == 1


def kth_root(ctx, a, k):
    """Some x with x**k == a, or None.

    Among all roots the one with the smallest discrete log is returned.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if a == 0:
        return 0
    n = ctx.q - 1
    d = math.gcd(k, n)
    if not is_kth_power(ctx, a, k):
        return None
    log_a = ctx.dlog(a)
    n_red = n // d
    if n_red == 1:
        return 1
    e = (log_a // d) * pow(k // d, -1, n_red) % n_red
    return ctx.gen_power(e)


def kth_power_count(ctx, k):
    """Size of {x**k : x in F_q}, zero included."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (ctx.q - 1) // math.gcd(k, ctx.q - 1) + 1


def minus_one_is_kth_power(p, l, k):
    """Closed-form test whether -1 is a k-th power in F_{p^l}."""
    if p == 2 or k % 2 == 1:
        return True
    s = (k & -k).bit_length() - 1
    return (p ** l - 1) % (2 ** (s + 1)) == 0


def format_element(ctx, a):
    return ",".join(str(d) for d in ctx.to_digits(a))


def parse_element(ctx, text):
    from .errors import FieldMismatch

    parts = [s.strip() for s in text.split(",")]
    try:
        digits = [int(s) for s in parts]
    except ValueError:
        raise FieldMismatch(f"bad element {text!r}") from None
    if len(digits) != ctx.m:
        raise FieldMismatch(f"element {text!r} needs {ctx.m} digit(s)")
    if any(not 0 <= d < ctx.p for d in digits):
        raise FieldMismatch(f"element {text!r} has digits outside [0, {ctx.p})")
    if ctx.base is None:
        return digits[0]
    return ctx.from_digits(digits)
