"""Scalar solvers: sums of two k-th powers in F_q and the constrained pair."""

import math
from dataclasses import dataclass

from .errors import NoRepresentation, NoSolution
from .ff import is_kth_power, kth_root

# above this size the k-th power set is scanned lazily instead of tabulated
POWERSET_LIMIT = 1 << 20


@dataclass(frozen=True)
class PairWitness:
    x: int
    y: int
    xk: int
    yk: int

    def check(self, ctx, k):
        return ctx.pow(self.x, k) == self.xk and ctx.pow(self.y, k) == self.yk


def waring_constant(k):
    """Field-size threshold (k + 2k^2)^2 above which the constrained pair exists."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k + 2 * k * k) ** 2


class PowerSet:
    """The k-th powers of a field in generator-power order: 0, g^0, g^d, g^2d, ...

    with d = gcd(k, q-1).  ``root(s)`` returns the smallest-log k-th root.
    """

    def __init__(self, ctx, k):
        self.ctx = ctx
        self.k = k
        n = ctx.q - 1
        self.d = math.gcd(k, n)
        self.size = n // self.d
        self.order = None
        self._roots = None
        if ctx.q <= POWERSET_LIMIT and (ctx.base is None or ctx.has_tables()):
            self._tabulate()

    def _tabulate(self):
        F = self.ctx
        step = F.gen_power(self.d)
        order = [0]
        x = 1
        for _ in range(self.size):
            order.append(x)
            x = F.mul(x, step)
        self.order = order
        # root of g^(d i) is g^j with j = i * (k/d)^-1 mod size
        u = pow(self.k // self.d, -1, self.size) if self.size > 1 else 0
        roots = {0: 0}
        for i, s in enumerate(order[1:]):
            roots[s] = F.gen_power(i * u % self.size) if self.size > 1 else 1
        self._roots = roots

    def __iter__(self):
        if self.order is not None:
            return iter(self.order)
        return self._lazy()

    def _lazy(self):
        F = self.ctx
        yield 0
        step = F.gen_power(self.d)
        x = 1
        for _ in range(self.size):
            yield x
            x = F.mul(x, step)

    def __contains__(self, a):
        if self._roots is not None:
            return a in self._roots
        return is_kth_power(self.ctx, a, self.k)

    def root(self, s):
        if self._roots is not None:
            return self._roots.get(s)
        return kth_root(self.ctx, s, self.k)


def power_set(ctx, k):
    memo = ctx._memo
    key = ("powerset", k)
    ps = memo.get(key)
    if ps is None:
        ps = memo[key] = PowerSet(ctx, k)
    return ps


def _scan(ctx, c, k, accept):
    S = power_set(ctx, k)
    for s in S:
        t = ctx.sub(c, s)
        if t in S and accept(s, t):
            return PairWitness(S.root(s), S.root(t), s, t)
    return None


def two_power_rep(ctx, c, k):
    """x, y with x^k + y^k = c; x^k runs through the k-th powers in generator order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    w = _scan(ctx, c, k, lambda s, t: True)
    if w is None:
        raise NoRepresentation(f"{c} is not a sum of two k-th powers in F_{ctx.q} (k={k})")
    return w


def constrained_pair(ctx, c, k, lam):
    """x, y with x^k + y^k = c, x^k != y^k and x^k y^k != lam."""
    if c == 0:
        raise ValueError("c must be nonzero")
    if k < 1:
        raise ValueError("k must be >= 1")
    w = _scan(ctx, c, k, lambda s, t: s != t and ctx.mul(s, t) != lam)
    if w is None:
        raise NoSolution(f"no constrained pair for c={c}, k={k}, lambda={lam} in F_{ctx.q}")
    return w
