import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from descalg.scalars import (Q, CyclotomicMismatchError, CyclotomicNumber, LaurentPoly,
                             cyclotomic_polynomial, evaluate_at, q_integer, specialize_at_root)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
laurent = st.dictionaries(st.integers(-6, 6), rationals, max_size=5).map(LaurentPoly)
orders = st.integers(1, 12)


@st.composite
def cyclotomic(draw, p=None):
    p = draw(orders) if p is None else p
    return CyclotomicNumber(p, draw(st.lists(rationals, max_size=2 * p)))


@st.composite
def cyclotomic_triple(draw):
    p = draw(orders)
    return tuple(draw(cyclotomic(p)) for _ in range(3))


def totient(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_polynomial_degree_and_roots(m):
    phi = cyclotomic_polynomial(m)
    assert len(phi) - 1 == totient(m)
    z = cmath.exp(2j * cmath.pi / m)
    assert abs(sum(c * z ** i for i, c in enumerate(phi))) < 1e-9


def test_q_integer_examples():
    assert q_integer(1, 5) == 1
    assert q_integer(3, 2) == 7
    assert q_integer(2, Q ** -1) == 1 + Q ** -1
    assert Q ** -1 * (1 + Q) == q_integer(2, Q ** -1)


@pytest.mark.parametrize("v", range(31))
def test_q_integer_inverse_variable(v):
    assert q_integer(v, Q ** -1) * Q ** (v - 1) == q_integer(v, Q)


def test_specialize_examples():
    assert specialize_at_root(1 + Q + Q ** 2, 3).is_zero()
    assert specialize_at_root(Q ** -1, 2) == -1
    assert specialize_at_root((1 - Q) * (1 - Q ** 2), 4) == CyclotomicNumber(4, (2, -2))


def test_laurent_basics():
    f = (1 + Q) * (1 - Q)
    assert str(f) == "1-q^2"
    assert f.valuation() == 0 and f.degree() == 2
    assert (Q ** -2).valuation() == -2 and not (Q ** -2).is_polynomial()
    assert LaurentPoly({0: 0, 3: 0}).is_zero()
    assert LaurentPoly({2: Fraction(4, 2)}).coefficient(2) == 2
    assert str(Fraction(1, 2) * Q) == "(1/2)q"
    assert f.exact_div(1 - Q) == 1 + Q
    with pytest.raises(ArithmeticError):
        (1 + Q ** 2).exact_div(1 - Q)


def test_laurent_evaluate_stays_exact():
    assert (Q ** -1 + 1).evaluate(2) == Fraction(3, 2)
    assert isinstance((Q ** 2).evaluate(3), int)
    assert evaluate_at(1 + Q, None) == 1 + Q
    assert evaluate_at(1 + Q, Q) == 1 + Q
    assert evaluate_at(1 + Q, CyclotomicNumber.zeta(2)).is_zero()


def test_laurent_hash_matches_constants():
    assert hash(LaurentPoly.constant(3)) == hash(3)
    assert LaurentPoly.constant(3) == 3


def test_cyclotomic_examples():
    z = CyclotomicNumber.zeta(4)
    assert z * z == -1
    assert (1 - z) * (1 - z * z) == CyclotomicNumber(4, (2, -2))
    assert z ** 4 == 1 and z ** -1 == -z
    assert repr((1 - z) * (1 - z * z)) == "CyclotomicNumber(4, (2, -2))"
    assert CyclotomicNumber.zeta(1) == 1
    with pytest.raises(CyclotomicMismatchError):
        CyclotomicNumber.zeta(3) + CyclotomicNumber.zeta(4)
    with pytest.raises(CyclotomicMismatchError):
        CyclotomicNumber.zeta(3) == CyclotomicNumber.zeta(4)
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber(5, ()).inverse()


@pytest.mark.parametrize("p", range(1, 13))
def test_zeta_has_order_p(p):
    z = CyclotomicNumber.zeta(p)
    assert z ** p == 1
    assert all(z ** k != 1 for k in range(1, p))


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0 and a * 1 == a


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(cyclotomic_triple())
def test_cyclotomic_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(cyclotomic())
def test_cyclotomic_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1
    assert 1 / x == x.inverse()


@settings(max_examples=60, deadline=None)
@given(cyclotomic())
def test_cyclotomic_matches_complex_embedding(x):
    z = cmath.exp(2j * cmath.pi / x.p)
    y = x * x + 3 * x
    value = lambda u: sum(float(c) * z ** i for i, c in enumerate(u.coeffs))
    assert abs(value(y) - (value(x) ** 2 + 3 * value(x))) < 1e-6 * (1 + abs(value(y)))


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, orders)
def test_specialization_is_a_ring_homomorphism(f, g, p):
    assert specialize_at_root(f * g, p) == specialize_at_root(f, p) * specialize_at_root(g, p)
    assert specialize_at_root(f + g, p) == specialize_at_root(f, p) + specialize_at_root(g, p)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=6))
def test_subsequence_sum_identity(S):
    lhs = LaurentPoly.constant(1)
    for s in S:
        lhs = lhs * (1 - Q ** s)
    rhs = LaurentPoly()
    for mask in range(1 << len(S)):
        chosen = [s for i, s in enumerate(S) if mask >> i & 1]
        rhs = rhs + (-1) ** len(chosen) * Q ** sum(chosen)
    assert lhs == rhs
