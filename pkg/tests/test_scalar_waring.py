import pytest
from hypothesis import given
from hypothesis import strategies as st

from matwaring.errors import NoRepresentation, NoSolution
from matwaring.ff import is_kth_power, make_field
from matwaring.scalar_waring import constrained_pair, power_set, two_power_rep, waring_constant


def _check_pair(F, w, k, c, lam=None):
    assert w.check(F, k)
    assert F.add(w.xk, w.yk) == c
    if lam is not None:
        assert w.xk != w.yk
        assert F.mul(w.xk, w.yk) != lam


def test_two_power_rep_examples():
    F7 = make_field(7)
    w = two_power_rep(F7, 5, 2)
    _check_pair(F7, w, 2, 5)
    # the two squares used are 4 and 1, in generator-power scan order
    assert {w.xk, w.yk} == {4, 1}
    assert (w.xk, w.yk) == (1, 4)
    w0 = two_power_rep(make_field(11), 0, 3)
    assert (w0.x, w0.y) == (0, 0)
    with pytest.raises(NoRepresentation):
        two_power_rep(F7, 3, 3)


def test_constrained_pair_examples():
    F13 = make_field(13)
    w = constrained_pair(F13, 1, 2, 0)
    assert (w.xk, w.yk) == (4, 10)
    _check_pair(F13, w, 2, 1, 0)
    F7 = make_field(7)
    w = constrained_pair(F7, 2, 1, 5)
    assert (w.x, w.y) == (0, 2)
    with pytest.raises(NoSolution):
        constrained_pair(make_field(5), 1, 4, 0)
    with pytest.raises(ValueError):
        constrained_pair(F7, 0, 2, 1)


def test_waring_constant():
    assert [waring_constant(k) for k in (1, 2, 3)] == [9, 100, 441]
    with pytest.raises(ValueError):
        waring_constant(0)


@pytest.mark.parametrize("q", [17, 19, 23])
def test_every_element_is_two_squares_above_k4(q):
    F = make_field(q)
    for c in F.elements():
        _check_pair(F, two_power_rep(F, c, 2), 2, c)


@pytest.mark.parametrize("q", [101, 103, 107, 109, 113])
def test_constrained_pair_exists_above_constant(q):
    F = make_field(q)
    for c in range(1, q):
        for lam in {0, 1, F.mul(c, c)}:
            _check_pair(F, constrained_pair(F, c, 2, lam), 2, c, lam)


def test_extension_fields():
    F = make_field(3, 4)
    for c in F.elements():
        _check_pair(F, two_power_rep(F, c, 2), 2, c)
    for c in range(1, F.q):
        _check_pair(F, constrained_pair(F, c, 5, c), 5, c, c)


@given(st.sampled_from([(7, 1), (13, 1), (2, 4), (5, 2), (31, 1)]), st.integers(1, 12), st.data())
def test_witnesses_always_check(pm, k, data):
    F = make_field(*pm)
    c = data.draw(st.integers(0, F.q - 1))
    try:
        _check_pair(F, two_power_rep(F, c, k), k, c)
    except NoRepresentation:
        assert F.q <= k ** 4
        assert not any(is_kth_power(F, F.sub(c, s), k) for s in power_set(F, k))
    if c:
        lam = data.draw(st.integers(0, F.q - 1))
        try:
            _check_pair(F, constrained_pair(F, c, k, lam), k, c, lam)
        except NoSolution:
            assert F.q <= waring_constant(k)


def test_power_set_order_and_roots():
    F = make_field(13)
    S = power_set(F, 2)
    assert list(S) == [0, 1, 4, 3, 12, 9, 10]
    for s in S:
        assert F.pow(S.root(s), 2) == s
    assert 5 not in S and S.root(5) is None
