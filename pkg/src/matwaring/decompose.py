"""Write a matrix over F_q as a sum of few k-th powers.

2x2 matrices are split by the shape of their characteristic polynomial:
diagonalizable (each eigenvalue a sum of two k-th powers), a 2x2 Jordan
block (sum of two conjugates of diagonal k-th powers), or irreducible (work
inside the field F_q[A]).  Larger matrices are reduced to companion blocks
of their rational canonical form; blocks of size >= 3 are split into two
diagonalizable summands built from 2x2 shift-like blocks.
"""

import logging
from dataclasses import dataclass, field

from .errors import (
    InternalVerificationError,
    NeedLargerField,
    NotCompanion,
    NotDiagonalizable,
    TooLarge,
)
from .ff import is_kth_power
from .matff import (
    DEFAULT_SEED,
    Mat,
    char_poly,
    companion,
    companion_coeffs,
    direct_sum,
    frobenius_form,
    from_columns,
    nullspace,
    solve,
)
from .oracle import brute_decompose, verify
from .polyff import roots_with_multiplicity
from .scalar_waring import constrained_pair, power_set, two_power_rep

log = logging.getLogger(__name__)


@dataclass
class Decomposition:
    target: Mat
    k: int
    witnesses: list
    case: str
    blocks: list = field(default_factory=list)

    @property
    def terms(self):
        return len(self.witnesses)

    def verify(self):
        return verify(self.target, self.k, self.witnesses)


def _finish(target, k, witnesses, case, blocks=()):
    kept = [X for X in witnesses if not X.is_zero()]
    if not kept:
        kept = [Mat.zero(target.ctx, target.n)]
    if not verify(target, k, kept):
        raise InternalVerificationError(f"{case} decomposition does not verify")
    return Decomposition(target, k, kept, case, list(blocks))


def _diagonalize_known(M, eigenvalues):
    """P with P^-1 M P = diag(eigenvalues) when the multiset is right."""
    F = M.ctx
    n = M.n
    counts = {}
    for lam in eigenvalues:
        counts[lam] = counts.get(lam, 0) + 1
    cols, values = [], []
    for lam, mult in counts.items():
        vecs = nullspace(M - Mat.scalar(F, n, lam))
        if len(vecs) != mult:
            raise NotDiagonalizable(f"eigenvalue {lam}: eigenspace {len(vecs)}, multiplicity {mult}")
        cols.extend(vecs)
        values.extend([lam] * mult)
    return from_columns(F, cols), values


def _diagonal_witnesses(P, values, k):
    """Two witnesses for P diag(values) P^-1, splitting each eigenvalue as a
    sum of two k-th powers; the first is zero when every value is a k-th power."""
    F = P.ctx
    reps = [two_power_rep(F, lam, k) for lam in values]
    Pinv = P.inverse()
    X = P @ Mat.diag(F, [w.x for w in reps]) @ Pinv
    Y = P @ Mat.diag(F, [w.y for w in reps]) @ Pinv
    return [X, Y]


def _single_power(M, roots_of):
    """Witness for a diagonalizable M whose eigenvalues all have known roots."""
    P, values = _diagonalize_known(M, list(roots_of))
    return P @ Mat.diag(M.ctx, [roots_of[v] for v in values]) @ P.inverse()


# -- 2x2 --------------------------------------------------------------------

def jordan_classify_2x2(ctx, A):
    """('scalar', I) if A = lambda I, else ('jordan', P) with P^-1 A P = [[lambda, 1], [0, lambda]]."""
    roots = roots_with_multiplicity(char_poly(A))
    if len(roots) != 1 or roots[0][1] != 2:
        raise ValueError("matrix does not have a repeated eigenvalue")
    lam = roots[0][0]
    I = Mat.identity(ctx, 2)
    if A == Mat.scalar(ctx, 2, lam):
        return "scalar", I
    B = A - Mat.scalar(ctx, 2, lam)
    v = nullspace(B)[0]
    w = solve(ctx, [list(r) for r in B.rows], v)
    return "jordan", from_columns(ctx, [v, w])


def jordan_block_decompose(ctx, lam, k):
    """Two witnesses whose k-th powers sum to [[lam, 1], [0, lam]].

    Writes the block, up to a diagonal conjugation, as B + C with
    B = [[a, b], [1, d]] of spectrum {r, s} and C = [[lam-a, b'], [-1, lam-d]]
    of spectrum {t, u}, where r, s, t, u are distinct-in-pairs k-th powers.
    """
    F = ctx
    J = Mat(F, [[lam, 1], [0, lam]])
    two_lam = F.add(lam, lam)
    firsts = [a for a in F.elements() if a] + [0]
    for a in firsts:
        for d in F.elements():
            tr = F.add(a, d)
            if tr == 0 or tr == two_lam:
                continue
            ad = F.mul(a, d)
            la, ld = F.sub(lam, a), F.sub(lam, d)
            try:
                rs = constrained_pair(F, tr, k, ad)
                tu = constrained_pair(F, F.sub(two_lam, tr), k, F.mul(la, ld))
            except NeedLargerField:
                continue
            b = F.sub(ad, F.mul(rs.xk, rs.yk))
            b2 = F.sub(F.mul(tu.xk, tu.yk), F.mul(la, ld))
            x = F.add(b, b2)
            if x == 0:
                continue
            B = Mat(F, [[a, b], [1, d]])
            C = Mat(F, [[la, b2], [F.neg(1), ld]])
            X1 = _single_power(B, {rs.xk: rs.x, rs.yk: rs.y})
            X2 = _single_power(C, {tu.xk: tu.x, tu.yk: tu.y})
            D = Mat.diag(F, [F.inv(x), 1])
            Dinv = Mat.diag(F, [x, 1])
            return _finish(J, k, [D @ X1 @ Dinv, D @ X2 @ Dinv], "jordan")
    raise NeedLargerField(f"no Jordan-block construction for lambda={lam}, k={k} in F_{F.q}")


def irreducible_quadratic_decompose(ctx, A, k):
    """Two witnesses u(A), v(A) with u, v in F_q[A], a field with q^2 elements."""
    chi = char_poly(A)
    E = ctx.extend((chi[0], chi[1], 1))
    theta = ctx.q
    w = two_power_rep(E, theta, k)
    I = Mat.identity(ctx, 2)
    witnesses = []
    for u in (w.x, w.y):
        alpha, beta = E.to_digits(u)
        witnesses.append(I.scale(alpha) + A.scale(beta))
    return _finish(A, k, witnesses, "irreducible")


def decompose2(ctx, A, k):
    """At most two k-th powers summing to the 2x2 matrix A."""
    if A.n != 2:
        raise ValueError("decompose2 needs a 2x2 matrix")
    if A.is_zero():
        return _finish(A, k, [A], "zero")
    roots = roots_with_multiplicity(char_poly(A))
    if not roots:
        return irreducible_quadratic_decompose(ctx, A, k)
    if len(roots) == 2:
        P, values = _diagonalize_known(A, [roots[0][0], roots[1][0]])
        return _finish(A, k, _diagonal_witnesses(P, values, k), "diagonal")
    lam = roots[0][0]
    kind, P = jordan_classify_2x2(ctx, A)
    if kind == "scalar":
        return _finish(A, k, _diagonal_witnesses(P, [lam, lam], k), "diagonal")
    inner = jordan_block_decompose(ctx, lam, k)
    Pinv = P.inverse()
    return _finish(A, k, [P @ X @ Pinv for X in inner.witnesses], "jordan")


# -- n >= 3 -------------------------------------------------------------------

def _shift_blocks(ctx, size, x, shifted=False):
    """Upper-triangular G, H with G + H = the size x size shift matrix (ones on
    the superdiagonal), built from [[0, 1], [0, -x]] and [[x, 1], [0, 0]] blocks.

    Default layout: G = g + g + ... (+ [0]), H = [0] + h + ... (+ [x]).
    ``shifted`` (odd size only): G = [-x] + g + ..., H = h + ... + [x], so
    that H ends in an [x] block.
    """
    F = ctx
    G = [[0] * size for _ in range(size)]
    H = [[0] * size for _ in range(size)]
    negx = F.neg(x)
    if shifted:
        G[0][0] = negx
        g_start, h_start = 1, 0
    else:
        g_start, h_start = 0, 1
    for i in range(g_start, size - 1, 2):
        G[i][i + 1] = 1
        G[i + 1][i + 1] = negx
    for i in range(h_start, size - 1, 2):
        H[i][i] = x
        H[i][i + 1] = 1
    if (size - h_start) % 2 == 1:
        H[size - 1][size - 1] = x
    return G, H


def _companion_summands(ctx, coeffs, x, b, c, row_in_b, shifted=False):
    """B + C = companion matrix with last row coeffs.  B carries b and C
    carries c in the corner (b + c = a_{n-1}); the row (a_0, ..., a_{n-2})
    goes to B when ``row_in_b`` and the superdiagonal 1 of the last column
    to the other summand."""
    n = len(coeffs)
    G, H = _shift_blocks(ctx, n - 1, x, shifted)
    B = [row + [0] for row in G] + [[0] * (n - 1) + [b]]
    C = [row + [0] for row in H] + [[0] * (n - 1) + [c]]
    v = list(coeffs[: n - 1])
    if row_in_b:
        B[n - 1][: n - 1] = v
        C[n - 2][n - 1] = 1
    else:
        B[n - 2][n - 1] = 1
        C[n - 1][: n - 1] = v
    return Mat(ctx, B), Mat(ctx, C)


def botha_split(ctx, A, k):
    """At most three k-th powers summing to a companion matrix of size >= 3.

    A = B + C with C a single k-th power and B one or two k-th powers; two
    in total whenever -1 and every eigenvalue placed in B are k-th powers.
    """
    F = ctx
    n = A.n
    coeffs = companion_coeffs(A)
    if n < 3 or coeffs is None:
        raise NotCompanion("botha_split needs a companion matrix of size >= 3")
    a = coeffs[n - 1]
    odd = n % 2 == 1
    minus_one = F.neg(1)
    # (b, c, row_in_b, shifted, case)
    splits = []
    if a == 0:
        splits.append((minus_one, 1, odd, False, "botha-odd-a0" if odd else "botha-even-a0"))
    else:
        try:
            w = constrained_pair(F, a, k, 0)
            split = (w.xk, w.yk, odd, False, "botha-odd-split" if odd else "botha-even")
        except NeedLargerField:
            split = None
        # a stays in B and C gets 0; for even n this needs H to end in [x]
        corner = (a, 0, True, not odd, "botha-odd" if odd else "botha-even-corner")
        a_power = is_kth_power(F, a, k)
        if odd:
            prefer_split = is_kth_power(F, minus_one, k) and not a_power
        else:
            prefer_split = not a_power
        splits = [split, corner] if prefer_split else [corner, split]
        splits = [s for s in splits if s is not None]
    S = power_set(F, k)
    for b, c, row_in_b, shifted, case in splits:
        for x in S:
            if x == 0:
                continue
            B, C = _companion_summands(F, coeffs, x, b, c, row_in_b, shifted)
            if B + C != A:
                raise AssertionError("summands do not add up to the companion matrix")
            try:
                # both summands are block triangular over triangular blocks,
                # so their spectra are their diagonals
                PB, vb = _diagonalize_known(B, [B.rows[i][i] for i in range(n)])
                PC, vc = _diagonalize_known(C, [C.rows[i][i] for i in range(n)])
                wc = _diagonal_witnesses(PC, vc, k)
                wb = _diagonal_witnesses(PB, vb, k)
            except (NotDiagonalizable, NeedLargerField):
                continue
            return _finish(A, k, wb + wc, case)
    raise NeedLargerField(f"no admissible splitting for this companion matrix in F_{F.q}, k={k}")


def _fallback(ctx, A, k, exc, max_terms):
    try:
        found = brute_decompose(ctx, A, k, max_terms)
    except TooLarge:
        raise exc from None
    if found is None:
        raise NeedLargerField(f"no decomposition with at most {max_terms} terms exists") from exc
    return _finish(A, k, found, "brute-force")


def _block(ctx, B, k, fallback, max_terms):
    try:
        if B.n == 1:
            w = two_power_rep(ctx, B.rows[0][0], k)
            return _finish(B, k, [Mat(ctx, [[w.x]]), Mat(ctx, [[w.y]])], "scalar")
        if B.n == 2:
            return decompose2(ctx, B, k)
        return botha_split(ctx, B, k)
    except NeedLargerField as exc:
        if not fallback:
            raise
        log.info("falling back to brute force for a %dx%d block: %s", B.n, B.n, exc)
        return _fallback(ctx, B, k, exc, max_terms)


def decompose_n(ctx, A, k, fallback=True, max_terms=3, seed=DEFAULT_SEED):
    """Witnesses X_1, ..., X_s (s <= 2 for n <= 2, s <= 3 otherwise) with sum X_i^k = A."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if A.ctx != ctx:
        raise ValueError("matrix is not over the given field")
    if k == 1:
        return _finish(A, k, [A], "first-power")
    if A.is_zero():
        return _finish(A, k, [A], "zero")
    if A.n <= 2:
        return _block(ctx, A, k, fallback, max_terms)
    form = frobenius_form(A, seed)
    parts = [_block(ctx, companion(g), k, fallback, max_terms) for g in form.factors]
    terms = max(d.terms for d in parts)
    witnesses = []
    for i in range(terms):
        witnesses.append(direct_sum([
            d.witnesses[i] if i < d.terms else Mat.zero(ctx, d.target.n) for d in parts
        ]))
    P = form.transform
    Pinv = P.inverse()
    case = "frobenius(" + ",".join(d.case for d in parts) + ")"
    return _finish(A, k, [Pinv @ Y @ P for Y in witnesses], case, parts)
