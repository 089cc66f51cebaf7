"""Exact linear algebra over finite fields.

Square matrices are :class:`Mat` objects holding row tuples of element
codes.  Rectangular work (echelon forms, kernels, linear solves) uses plain
lists of rows and is kept to the module-level helpers.
"""

import random
from dataclasses import dataclass

from .errors import NotDiagonalizable, NotMonic, NotSplit, ShapeMismatch, Singular
from .polyff import Poly, lcm, roots_with_multiplicity

DEFAULT_SEED = 1729


class Mat:
    __slots__ = ("ctx", "n", "rows")

    def __init__(self, ctx, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ShapeMismatch("matrix must be square")
        self.ctx = ctx
        self.n = n
        self.rows = rows

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, [[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, ctx, n):
        return cls.scalar(ctx, n, 1)

    @classmethod
    def scalar(cls, ctx, n, c):
        return cls(ctx, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ctx, values):
        n = len(values)
        return cls(ctx, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat({[list(r) for r in self.rows]} over {self.ctx!r})"

    def _check(self, other):
        if self.n != other.n:
            raise ShapeMismatch(f"sizes {self.n} and {other.n} differ")

    def __add__(self, other):
        self._check(other)
        add = self.ctx.add
        return Mat(self.ctx, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        sub = self.ctx.sub
        return Mat(self.ctx, [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        neg = self.ctx.neg
        return Mat(self.ctx, [[neg(x) for x in r] for r in self.rows])

    def __matmul__(self, other):
        self._check(other)
        dot = self.ctx.dot
        cols = list(zip(*other.rows))
        return Mat(self.ctx, [[dot(r, c) for c in cols] for r in self.rows])

    __mul__ = __matmul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.ctx, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def scale(self, c):
        mul = self.ctx.mul
        return Mat(self.ctx, [[mul(c, x) for x in r] for r in self.rows])

    def transpose(self):
        return Mat(self.ctx, zip(*self.rows))

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def is_scalar(self):
        c = self.rows[0][0] if self.n else 0
        return self == Mat.scalar(self.ctx, self.n, c)

    def apply(self, v):
        """Matrix times column vector."""
        dot = self.ctx.dot
        return [dot(r, v) for r in self.rows]

    def row_apply(self, v):
        """Row vector times matrix."""
        dot = self.ctx.dot
        return [dot(v, c) for c in zip(*self.rows)]

    def det(self):
        F = self.ctx
        rows = [list(r) for r in self.rows]
        n = self.n
        det = 1
        for col in range(n):
            piv = next((i for i in range(col, n) if rows[i][col]), None)
            if piv is None:
                return 0
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = F.neg(det)
            pv = rows[col][col]
            det = F.mul(det, pv)
            inv = F.inv(pv)
            for i in range(col + 1, n):
                f = rows[i][col]
                if f:
                    f = F.mul(f, inv)
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[col])]
        return det

    def inverse(self):
        n = self.n
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(self.ctx, aug)
        if pivots[:n] != list(range(n)):
            raise Singular("matrix is not invertible")
        return Mat(self.ctx, [r[n:] for r in red])

    def rank(self):
        return len(rref(self.ctx, self.rows)[1])


def mat_arith(op, *operands):
    """Uniform entry point for op in {add, mul, pow, inverse, det}."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "mul":
        return operands[0] @ operands[1]
    if op == "pow":
        return operands[0] ** operands[1]
    if op == "inverse":
        return operands[0].inverse()
    if op == "det":
        return operands[0].det()
    raise ValueError(f"unknown operation {op!r}")


# -- rectangular helpers ------------------------------------------------------

def rref(ctx, rows):
    """Reduced row echelon form of a list of rows; returns (rows, pivot columns)."""
    F = ctx
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        if inv != 1:
            rows[r] = [F.mul(inv, a) for a in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel(ctx, rows, ncols=None):
    """Basis of {v : rows . v = 0} as a list of column vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(ctx, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, pivots):
            v[pc] = ctx.neg(r[fc])
        basis.append(v)
    return basis


def solve(ctx, rows, rhs):
    """One solution v of rows . v = rhs, or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(ctx, aug)
    if pivots and pivots[-1] == ncols:
        return None
    v = [0] * ncols
    for r, pc in zip(red, pivots):
        v[pc] = r[ncols]
    return v


def nullspace(A):
    """Basis of the right kernel of A; its size is n - rank."""
    return kernel(A.ctx, A.rows, A.n)


def from_columns(ctx, cols):
    return Mat(ctx, zip(*cols))


# -- canonical forms ------------------------------------------------------------

def companion(g):
    """Companion matrix with superdiagonal ones and last row (a_0, ..., a_{n-1}),
    where g = x^n - a_{n-1} x^{n-1} - ... - a_0."""
    if g.degree < 1 or g.lead != 1:
        raise NotMonic("companion matrix needs a monic polynomial of degree >= 1")
    F = g.ctx
    n = g.degree
    rows = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
    rows.append([F.neg(g[j]) for j in range(n)])
    return Mat(F, rows)


def companion_coeffs(A):
    """(a_0, ..., a_{n-1}) if A is a companion matrix, else None."""
    n = A.n
    for i in range(n - 1):
        for j in range(n):
            if A.rows[i][j] != (1 if j == i + 1 else 0):
                return None
    return A.rows[n - 1]


def char_poly(A):
    """det(xI - A) via Hessenberg reduction and the leading-minor recurrence."""
    F = A.ctx
    n = A.n
    H = [list(r) for r in A.rows]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if not u:
                continue
            u = F.mul(u, inv)
            H[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[i], H[m])]
            for row in H:
                row[m] = F.add(row[m], F.mul(u, row[i]))
    x = Poly.x(F)
    polys = [Poly(F, (1,))]
    for m in range(1, n + 1):
        pm = (x - Poly.const(F, H[m - 1][m - 1])) * polys[m - 1]
        t = 1
        for i in range(m - 1, 0, -1):
            t = F.mul(t, H[i][i - 1])
            if not t:
                break
            c = F.mul(H[i - 1][m - 1], t)
            if c:
                pm = pm - polys[i - 1].scale(c)
        polys.append(pm)
    return polys[n]


def diagonalize(A):
    """(P, eigenvalues) with P^-1 A P = diag(eigenvalues).

    Eigenvalues are listed by increasing code, repeated by multiplicity.
    """
    F = A.ctx
    n = A.n
    if n == 0:
        return Mat(F, []), []
    roots = roots_with_multiplicity(char_poly(A))
    if sum(m for _, m in roots) < n:
        raise NotSplit("characteristic polynomial does not split")
    cols, values = [], []
    for lam, mult in roots:
        vecs = nullspace(A - Mat.scalar(F, n, lam))
        if len(vecs) < mult:
            raise NotDiagonalizable(f"eigenspace of {lam} has dimension {len(vecs)} < {mult}")
        cols.extend(vecs)
        values.extend([lam] * mult)
    return from_columns(F, cols), values


def direct_sum(blocks):
    if not blocks:
        raise ValueError("direct sum of no blocks")
    F = blocks[0].ctx
    n = sum(b.n for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([0] * off + list(r) + [0] * (n - off - b.n))
        off += b.n
    return Mat(F, rows)


def conjugate(P, A):
    """P A P^-1."""
    return P @ A @ P.inverse()


@dataclass(frozen=True)
class FrobeniusForm:
    transform: Mat
    factors: tuple

    def blocks(self):
        return [companion(g) for g in self.factors]

    def matrix(self):
        return direct_sum(self.blocks())


def _krylov(A, r):
    """Rows r, rA, ..., rA^(d-1) spanning the cyclic subspace of the row
    vector r, plus the monic local minimal polynomial."""
    F = A.ctx
    basis = [list(r)]
    while True:
        nxt = A.row_apply(basis[-1])
        coeffs = solve(F, [list(c) for c in zip(*basis)], nxt)
        if coeffs is not None:
            g = Poly(F, [F.neg(c) for c in coeffs] + [1])
            return basis, g
        basis.append(nxt)


def _vectors(F, n, rng):
    for i in range(n):
        yield [1 if j == i else 0 for j in range(n)]
    if F.q ** n <= 4096:
        for code in range(1, F.q ** n):
            v = []
            for _ in range(n):
                code, d = divmod(code, F.q)
                v.append(d)
            yield v[::-1]
        return
    while True:
        yield [rng.randrange(F.q) for _ in range(n)]


def _frobenius_rows(A, rng):
    F = A.ctx
    n = A.n
    if n == 0:
        return [], []
    mu = Poly(F, (1,))
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        mu = lcm(mu, _krylov(A, e)[1])
    d = mu.degree
    for r in _vectors(F, n, rng):
        if not any(r):
            continue
        K, g = _krylov(A, r)
        if g.degree == d:
            break
    # phi with (r A^i) . phi = [i == d-1]; {x : x A^i phi = 0, i < d} is an
    # A-invariant complement of the cyclic subspace of r
    phi = solve(F, K, [0] * (d - 1) + [1])
    cols = [phi]
    for _ in range(d - 1):
        cols.append(A.apply(cols[-1]))
    W = [list(v) for v in kernel(F, cols, n)]
    if not W:
        return K, [mu]
    Wt = [list(c) for c in zip(*W)]
    sub = [solve(F, Wt, A.row_apply(w)) for w in W]
    sub_rows, sub_factors = _frobenius_rows(Mat(F, sub), rng)
    lifted = [[F.dot(c, col) for col in zip(*W)] for c in sub_rows]
    return lifted + K, sub_factors + [mu]


def frobenius_form(A, seed=DEFAULT_SEED):
    """Rational canonical form with transform P: P A P^-1 = C(g_1) + ... + C(g_s).

    Built by splitting off the cyclic subspace of a vector whose local
    minimal polynomial is the minimal polynomial of A, then recursing on an
    A-invariant complement.
    """
    rng = random.Random(seed)
    rows, factors = _frobenius_rows(A, rng)
    P = Mat(A.ctx, rows)
    form = FrobeniusForm(P, tuple(factors))
    if P.det() == 0 or P @ A != form.matrix() @ P:
        raise AssertionError("Frobenius transform failed to reconstruct A")
    return form
