import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matwaring.errors import NotDiagonalizable, NotMonic, NotSplit, ShapeMismatch, Singular
from matwaring.ff import make_field
from matwaring.matff import (
    Mat,
    char_poly,
    companion,
    conjugate,
    diagonalize,
    direct_sum,
    frobenius_form,
    mat_arith,
    nullspace,
)
from matwaring.polyff import Poly

F7 = make_field(7)
FIELDS = {"F_3": make_field(3), "F_5": make_field(5), "F_7": F7, "F_4": make_field(2, 2), "F_49": make_field(7, 2)}


def matrices(F, max_n=5, min_n=1):
    def build(n):
        return st.lists(
            st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n), min_size=n, max_size=n
        ).map(lambda rows: Mat(F, rows))

    return st.integers(min_n, max_n).flatmap(build)


def monic(F, max_degree=6):
    return st.lists(st.integers(0, F.q - 1), min_size=1, max_size=max_degree).map(
        lambda low: Poly(F, low + [1])
    )


def test_arith_examples():
    I = Mat.identity(F7, 3)
    assert mat_arith("pow", I, 11) == I
    assert mat_arith("pow", Mat.diag(F7, [2, 3]), 2) == Mat.diag(F7, [4, 2])
    swap = Mat(F7, [[0, 1], [1, 0]])
    assert mat_arith("inverse", swap) == swap
    assert mat_arith("det", Mat(F7, [[1, 2], [3, 4]])) == F7.sub(4, 6)
    with pytest.raises(Singular):
        Mat(F7, [[1, 2], [2, 4]]).inverse()
    with pytest.raises(ShapeMismatch):
        Mat(F7, [[1, 2], [3, 4]]) + Mat.identity(F7, 3)


def test_power_is_repeated_product():
    rng = random.Random(1)
    for F in FIELDS.values():
        A = Mat(F, [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)])
        acc = Mat.identity(F, 3)
        for k in range(9):
            assert A ** k == acc
            acc = acc @ A


def test_companion_layout():
    g = Poly(F7, [F7.neg(2), F7.neg(3), 1])
    assert companion(g) == Mat(F7, [[0, 1], [2, 3]])
    assert companion(Poly(F7, [F7.neg(5), 1])) == Mat(F7, [[5]])
    shift = companion(Poly(F7, [0, 0, 0, 1]))
    assert shift == Mat(F7, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(NotMonic):
        companion(Poly(F7, [1, 2]))


@pytest.mark.parametrize("name", ["F_5", "F_7", "F_49"])
@given(data=st.data())
def test_char_poly_of_companion(name, data):
    F = FIELDS[name]
    g = data.draw(monic(F))
    assert char_poly(companion(g)) == g


def test_char_poly_examples():
    assert char_poly(Mat.diag(F7, [2, 5])) == Poly.from_roots(F7, [2, 5])
    assert char_poly(Mat.zero(F7, 4)) == Poly(F7, [0, 0, 0, 0, 1])


@pytest.mark.parametrize("name", ["F_3", "F_4", "F_7"])
@given(data=st.data())
def test_char_poly_cayley_hamilton_and_constant_term(name, data):
    F = FIELDS[name]
    A = data.draw(matrices(F, 4))
    chi = char_poly(A)
    assert chi.degree == A.n and chi.lead == 1
    # Cayley-Hamilton
    acc = Mat.zero(F, A.n)
    for c in reversed(chi.coeffs):
        acc = acc @ A + Mat.scalar(F, A.n, c)
    assert acc.is_zero()
    assert chi(0) == (A.det() if A.n % 2 == 0 else F.neg(A.det()))


def test_nullspace_examples():
    assert nullspace(Mat.identity(F7, 3)) == []
    assert len(nullspace(Mat.zero(F7, 3))) == 3
    N = nullspace(Mat(F7, [[0, 1], [0, 0]]))
    assert len(N) == 1 and N[0][1] == 0 and N[0][0] != 0


@given(matrices(F7, 5))
def test_nullspace_dimension_and_kernel(A):
    N = nullspace(A)
    assert len(N) == A.n - A.rank()
    for v in N:
        assert all(x == 0 for x in A.apply(v))


def test_diagonalize_examples():
    A = Mat(F7, [[1, 1], [0, 2]])
    P, values = diagonalize(A)
    assert sorted(values) == [1, 2]
    assert P @ Mat.diag(F7, values) @ P.inverse() == A
    with pytest.raises(NotDiagonalizable):
        diagonalize(Mat(F7, [[0, 1], [0, 0]]))
    with pytest.raises(NotSplit):
        diagonalize(Mat(F7, [[0, 1], [2, 3]]))


@pytest.mark.parametrize("name", ["F_3", "F_7", "F_49"])
@given(data=st.data())
def test_diagonalize_reconstructs(name, data):
    F = FIELDS[name]
    A = data.draw(matrices(F, 4))
    try:
        P, values = diagonalize(A)
    except (NotSplit, NotDiagonalizable):
        return
    assert P @ Mat.diag(F, values) @ P.inverse() == A


def test_direct_sum_and_conjugate():
    A = Mat(F7, [[1, 2], [3, 4]])
    B = Mat(F7, [[5]])
    assert direct_sum([A]) == A
    for k in range(1, 6):
        assert direct_sum([A, B]) ** k == direct_sum([A ** k, B ** k])
    assert conjugate(Mat.identity(F7, 2), A) == A


@given(matrices(F7, 4, 1), matrices(F7, 4, 1), st.integers(1, 6))
def test_conjugation_carries_decompositions(X, Y, k):
    if X.n != Y.n:
        return
    A = X ** k + Y ** k
    # unipotent, hence invertible
    P = Mat(F7, [[1 if i == j else (1 if j == i + 1 else 0) for j in range(X.n)] for i in range(X.n)])
    assert conjugate(P, A) == conjugate(P, X) ** k + conjugate(P, Y) ** k


def test_frobenius_examples():
    g = Poly(F7, [3, 0, 5, 1])
    form = frobenius_form(companion(g))
    assert form.factors == (g,)
    assert form.transform == Mat.identity(F7, 3)
    F3 = FIELDS["F_3"]
    form = frobenius_form(Mat.identity(F3, 2))
    assert form.factors == (Poly(F3, [2, 1]), Poly(F3, [2, 1]))


def _check_frobenius(A):
    form = frobenius_form(A)
    P = form.transform
    assert P.det() != 0
    assert P @ A @ P.inverse() == form.matrix()
    assert all(a.divides(b) for a, b in zip(form.factors, form.factors[1:]))
    prod = Poly(A.ctx, [1])
    for g in form.factors:
        assert g.lead == 1
        prod = prod * g
    assert prod == char_poly(A)


@pytest.mark.parametrize("name", ["F_3", "F_7", "F_4", "F_49"])
def test_frobenius_random(name):
    F = FIELDS[name]
    rng = random.Random(5)
    for _ in range(300 // 4 + 1):
        n = rng.randint(1, 5)
        _check_frobenius(Mat(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]))


@pytest.mark.parametrize("name", ["F_3", "F_7"])
def test_frobenius_structured(name):
    """Scalar, block-repeated and nilpotent inputs give long invariant chains."""
    F = FIELDS[name]
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 2)
        B = Mat(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)])
        _check_frobenius(direct_sum([B, B, B]))
        _check_frobenius(direct_sum([B, Mat.scalar(F, 2, rng.randrange(F.q))]))
    _check_frobenius(Mat.zero(F, 4))
    _check_frobenius(direct_sum([companion(Poly(F, [0, 0, 1])), Mat.zero(F, 2)]))


def test_frobenius_is_seed_independent_in_its_factors():
    rng = random.Random(2)
    A = Mat(F7, [[rng.randrange(7) for _ in range(4)] for _ in range(4)])
    assert frobenius_form(A, seed=1).factors == frobenius_form(A, seed=2).factors
