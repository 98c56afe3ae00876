import itertools

import pytest
from hypothesis import given, settings, strategies as st

from descalg import sigma
from descalg.compositions import Subset, all_subsets, comp_of
from descalg.sigma import (SigmaElement, b_to_d, d_to_b, enumerate_mackey_matrices,
                           mackey_count, multiply_b, multiply_sigma, reading_word)
from descalg.symmetric import b_element, expand_in_sigma, multiply


def S(n, *members):
    return Subset.from_members(n, members)


def test_worked_mackey_example():
    I, J, K = S(5, 3), S(5, 1, 3), S(5, 1, 3)
    hits = sorted(A for A, L in enumerate_mackey_matrices(I, J) if L == K)
    assert hits == [((1, 0, 2), (0, 2, 0)), ((1, 2, 0), (0, 0, 2))]
    assert multiply_b(I, J).coefficient(K) == 2
    assert mackey_count(I, J, K) == 2


def test_trivial_factors():
    n = 5
    for I in all_subsets(n):
        ms = list(enumerate_mackey_matrices(S(n), I))
        assert ms == [((comp_of(I),), I)]
        ms = list(enumerate_mackey_matrices(I, S(n)))
        assert len(ms) == 1 and ms[0][1] == I
        assert ms[0][0] == tuple((a,) for a in comp_of(I))
        assert multiply_b(I, S(n)) == SigmaElement.basis_element(n, I)


def test_convention_is_pinned():
    # rows of the Mackey matrices come from the right factor of B_J B_I
    assert sigma.MACKEY_ROW_FACTOR == "right"
    n = 4
    I, J = S(n, 1), S(n, 2, 3)
    brute = expand_in_sigma(multiply(b_element(J), b_element(I)))
    assert multiply_b(I, J) == brute
    assert multiply_b(J, I) != brute


def test_reading_word():
    assert reading_word(((1, 0, 2), (0, 2, 0))) == (1, 2, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_mackey_against_group_algebra(n):
    subs = list(all_subsets(n))
    for I, J in itertools.product(subs, subs):
        product = multiply_b(I, J)
        assert product == expand_in_sigma(multiply(b_element(J), b_element(I)))
        for K in subs:
            assert product.coefficient(K) == mackey_count(I, J, K)
            if not I.issubset(K):
                assert product.coefficient(K) == 0


def test_basis_change_examples():
    n = 4
    e = S(n)
    assert b_to_d(SigmaElement.basis_element(n, e)) == SigmaElement.basis_element(n, e, "D")
    I = S(n, 1, 3)
    want = {J: (-1) ** (I.size - J.size) for J in I.submasks()}
    assert d_to_b(SigmaElement.basis_element(n, I, "D")).coeffs == want
    with pytest.raises(ValueError):
        b_to_d(SigmaElement.basis_element(n, I, "D"))
    with pytest.raises(ValueError):
        d_to_b(SigmaElement.basis_element(n, I, "B"))


def test_element_invariants():
    f = SigmaElement(3, {S(3): 0, S(3, 1): 2})
    assert f.coeffs == {S(3, 1): 2}
    with pytest.raises(ValueError):
        SigmaElement(3, {S(4, 1): 1})
    with pytest.raises(ValueError):
        SigmaElement(3, {}, "X")
    g = SigmaElement.basis_element(3, S(3, 2), "D")
    assert f + g == g + f and (f - f).is_zero()
    assert multiply_sigma(f, SigmaElement.basis_element(3, S(3))) == f
    with pytest.raises(ValueError):
        multiply_sigma(f, SigmaElement.zero(4))


@st.composite
def elements(draw, n=None, basis=None):
    n = draw(st.integers(1, 10)) if n is None else n
    basis = draw(st.sampled_from("BD")) if basis is None else basis
    coeffs = draw(st.dictionaries(st.integers(0, (1 << (n - 1)) - 1), st.integers(-9, 9), max_size=8))
    return SigmaElement(n, {Subset(n, m): c for m, c in coeffs.items()}, basis)


@settings(max_examples=60, deadline=None)
@given(elements())
def test_basis_round_trip(f):
    assert f.to_d().to_b().to_d() == f
    assert f.to_b() == f
    assert f.to_b().basis == "B" and f.to_d().basis == "D"


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_multiplication_is_associative_and_bilinear(t):
    f, g, h = t
    assert multiply_sigma(multiply_sigma(f, g), h) == multiply_sigma(f, multiply_sigma(g, h))
    assert multiply_sigma(f, g + h) == multiply_sigma(f, g) + multiply_sigma(f, h)
