"""Brute-force ground truth: exhaustive decompositions, empirical Waring
numbers, census over (q, n, k) and the point-count bound check.

Everything here enumerates whole matrix rings with numpy and shares no code
path with the constructive engine beyond the field and matrix types.
"""

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from itertools import product

import numpy as np

from .errors import ShapeMismatch, TooLarge, WaringError
from .ff import is_prime, make_field
from .matff import Mat, companion, direct_sum
from .polyff import Poly, count_points_superelliptic, superelliptic_abs_irreducible

log = logging.getLogger(__name__)

GUARD = 10 ** 7
CHUNK = 1 << 18
# cap on elementwise work for sumset growth
WORK_LIMIT = 4 * 10 ** 9


def verify(A, k, witnesses):
    """True iff the k-th powers of the witnesses sum to A exactly."""
    if not witnesses:
        return A.is_zero()
    total = Mat.zero(A.ctx, A.n)
    for X in witnesses:
        if X.n != A.n:
            raise ShapeMismatch(f"witness of size {X.n} for a {A.n}x{A.n} target")
        total = total + X ** k
    return total == A


class _VecField:
    """Vectorised arithmetic on int64 arrays of element codes."""

    def __init__(self, ctx):
        if ctx.base is not None and ctx.base.base is not None:
            raise TooLarge("towered fields are not supported by the oracle")
        self.ctx = ctx
        self.p = ctx.p
        self.q = ctx.q
        self.prime = ctx.base is None
        if not self.prime:
            if not ctx.has_tables():
                raise TooLarge(f"F_{ctx.q} is too large for table arithmetic")
            self.exp = np.array(ctx._exp, dtype=np.int64)
            self.log = np.array([0 if v is None else v for v in ctx._log], dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.ctx.m):
            out += ((a // scale) % p + (b // scale) % p) % p * scale
            scale *= p
        return out

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        p = self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.ctx.m):
            out += (-((a // scale) % p)) % p * scale
            scale *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def matmul(self, X, Y):
        if self.prime:
            return np.matmul(X, Y) % self.p
        n = X.shape[-1]
        acc = self.mul(X[..., :, 0:1], Y[..., 0:1, :])
        for l in range(1, n):
            acc = self.add(acc, self.mul(X[..., :, l:l + 1], Y[..., l:l + 1, :]))
        return acc

    def matpow(self, X, k):
        n = X.shape[-1]
        result = np.broadcast_to(np.eye(n, dtype=np.int64), X.shape).copy()
        base = X
        while k:
            if k & 1:
                result = self.matmul(result, base)
            k >>= 1
            if k:
                base = self.matmul(base, base)
        return result


class PowerTable:
    """All k-th powers in M_n(F_q), indexed by the big-endian row-major code
    of the matrix entries (so index order is lexicographic order)."""

    def __init__(self, ctx, n, k):
        q = ctx.q
        N = q ** (n * n)
        if N > GUARD:
            raise TooLarge(f"q^(n^2) = {N} exceeds the enumeration guard {GUARD}")
        self.ctx, self.n, self.k, self.N = ctx, n, k, N
        self.vec = _VecField(ctx)
        self.place = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        minbase = np.full(N, N, dtype=np.int64)
        for start in range(0, N, CHUNK):
            idx = np.arange(start, min(N, start + CHUNK), dtype=np.int64)
            mats = self.decode(idx).reshape(-1, n, n)
            pidx = self.encode(self.vec.matpow(mats, k).reshape(-1, n * n))
            vals, first = np.unique(pidx, return_index=True)
            minbase[vals] = np.minimum(minbase[vals], idx[first])
        self.minbase = minbase
        self.member = minbase < N
        powers = np.nonzero(self.member)[0]
        self.powers = powers[np.argsort(minbase[powers], kind="stable")]
        self.power_digits = self.decode(self.powers)

    def decode(self, idx):
        return (np.asarray(idx, dtype=np.int64)[:, None] // self.place) % self.ctx.q

    def encode(self, digits):
        return digits @ self.place

    def index_of(self, A):
        return int(self.encode(np.array([c for r in A.rows for c in r], dtype=np.int64)))

    def matrix(self, idx):
        d = self.decode(np.array([idx]))[0]
        n = self.n
        return Mat(self.ctx, [[int(d[i * n + j]) for j in range(n)] for i in range(n)])

    def sumset(self, mask):
        """Boolean mask of {a + b : mask[a], b a k-th power}."""
        K = np.nonzero(mask)[0]
        if len(K) * len(self.powers) * self.n * self.n > WORK_LIMIT:
            raise TooLarge("sumset work exceeds the configured limit")
        Kd = self.decode(K)
        Pd = self.power_digits
        if len(K) < len(Pd):
            Kd, Pd = Pd, Kd
        out = np.zeros(self.N, dtype=bool)
        for row in Pd:
            out[self.encode(self.vec.add(Kd, row[None, :]))] = True
        return out

    def _pair(self, a_digits):
        """Lexicographically first (X1, X2) indices with X1^k + X2^k = A, or None."""
        rest = self.encode(self.vec.sub(a_digits[None, :], self.power_digits))
        hits = np.nonzero(self.member[rest])[0]
        if len(hits) == 0:
            return None
        i = hits[0]
        return int(self.minbase[self.powers[i]]), int(self.minbase[rest[i]])

    def decompose(self, A, s):
        a_idx = self.index_of(A)
        a_digits = self.decode(np.array([a_idx]))[0]
        if self.member[a_idx]:
            return [int(self.minbase[a_idx])]
        if s < 2:
            return None
        pair = self._pair(a_digits)
        if pair is not None:
            return list(pair)
        if s < 3:
            return None
        P = len(self.powers)
        if P * P * self.n * self.n > WORK_LIMIT:
            raise TooLarge("three-term search exceeds the configured limit")
        step = max(1, (1 << 20) // max(P, 1))
        for start in range(0, P, step):
            first = self.power_digits[start:start + step]
            ys = self.vec.sub(a_digits[None, :], first)
            # ys[i] is a sum of two powers iff ys[i] - P meets the power set
            diff = self.vec.sub(ys[:, None, :], self.power_digits[None, :, :])
            ok = self.member[self.encode(diff)].any(axis=1)
            hits = np.nonzero(ok)[0]
            if len(hits):
                i = hits[0]
                x1 = int(self.minbase[self.powers[start + i]])
                return [x1] + list(self._pair(ys[i]))
        return None


def power_table(ctx, n, k):
    key = ("oracle-powers", n, k)
    table = ctx._memo.get(key)
    if table is None:
        table = ctx._memo[key] = PowerTable(ctx, n, k)
    return table


def brute_decompose(ctx, A, k, s=3):
    """Witnesses (fewest terms first, then lexicographically first) with
    at most s terms, or None."""
    if not 1 <= s <= 3:
        raise ValueError("s must be 1, 2 or 3")
    table = power_table(ctx, A.n, k)
    found = table.decompose(A, s)
    if found is None:
        return None
    return [table.matrix(i) for i in found]


def monic_polys(ctx, d):
    for low in product(range(ctx.q), repeat=d):
        yield Poly(ctx, low[::-1] + (1,))


def invariant_factor_chains(ctx, n):
    """Every chain g_1 | ... | g_s of monic polynomials with total degree n."""

    def rec(total, bound):
        if total == 0:
            yield ()
            return
        top = total if bound is None else min(total, bound.degree)
        for d in range(1, top + 1):
            for g in monic_polys(ctx, d):
                if bound is not None and not g.divides(bound):
                    continue
                for rest in rec(total - d, g):
                    yield rest + (g,)

    return rec(n, None)


def class_representatives(ctx, n):
    """Rational canonical forms of all conjugacy classes of M_n(F_q)."""
    for chain in invariant_factor_chains(ctx, n):
        yield direct_sum([companion(g) for g in chain])


def min_waring_number(ctx, n, k):
    """Smallest s such that every matrix in M_n(F_q) is a sum of s k-th powers."""
    if k == 1:
        return 1
    table = power_table(ctx, n, k)
    reps = np.array([table.index_of(R) for R in class_representatives(ctx, n)], dtype=np.int64)
    level = table.member
    s = 1
    while not level[reps].all():
        grown = level | table.sumset(level)
        if (grown == level).all():
            raise WaringError(f"some matrices of M_{n}(F_{ctx.q}) are not sums of {k}-th powers")
        level = grown
        s += 1
    return s


@dataclass
class CensusRecord:
    p: int
    m: int
    q: int
    n: int
    k: int
    max_terms: object
    classes_checked: int
    elapsed_ms: int


CSV_HEADER = [f.name for f in fields(CensusRecord)]


def census_cell(p, m, n, k):
    start = time.perf_counter()
    ctx = make_field(p, m)
    try:
        classes = sum(1 for _ in invariant_factor_chains(ctx, n)) if n > 1 else ctx.q
        max_terms = min_waring_number(ctx, n, k)
    except (TooLarge, WaringError) as exc:
        log.warning("census cell p=%d m=%d n=%d k=%d skipped: %s", p, m, n, k, exc)
        max_terms, classes = None, 0
    elapsed = int((time.perf_counter() - start) * 1000)
    return CensusRecord(p, m, p ** m, n, k, max_terms, classes, elapsed)


def census(primes, ms, ns, ks, jobs=1):
    """One record per (p, m, n, k) cell, sorted by (p, m, n, k)."""
    cells = sorted((p, m, n, k) for p in primes for m in ms for n in ns for k in ks)
    for p, *_ in cells:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(census_cell, *zip(*cells)))
    return [census_cell(*c) for c in cells]


def census_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(["" if v is None else v for v in astuple(r)])
    return buf.getvalue()


@dataclass
class WeilRecord:
    N: int
    abs_irreducible: bool
    hypothesis_met: bool
    bound_holds: bool


def weil_check(ctx, d, f):
    """Exact point count of y^d = f(x) against the bound 4 d^(3/2) m sqrt(q)."""
    if ctx.q ** 2 > GUARD:
        raise TooLarge(f"q^2 = {ctx.q ** 2} exceeds the enumeration guard")
    m = f.degree
    N = count_points_superelliptic(ctx, d, f)
    q = ctx.q
    return WeilRecord(
        N=N,
        abs_irreducible=superelliptic_abs_irreducible(d, f),
        hypothesis_met=q > 100 * d * m * m,
        bound_holds=(N - q) ** 2 <= 16 * d ** 3 * m * m * q,
    )


def empirical_power_count(ctx, k):
    """|{x^k : x in F_q}| by enumeration."""
    return len({ctx.pow(x, k) for x in ctx.elements()})

