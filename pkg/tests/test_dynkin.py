from fractions import Fraction

import pytest

from descalg.compositions import Subset, all_subsets, comp_of
from descalg.dynkin import (coeff_vnk, coeff_vnq, dynkin_sigma, eigenvalues, left_multiply_dynkin,
                            peak_expand, vnq_action_matrix, vnq_via_vnk, zero_coeff_predicate)
from descalg.scalars import Q, CyclotomicNumber, LaurentPoly, q_integer
from descalg.sigma import SigmaElement, multiply_sigma
from descalg.symmetric import b_element, d_element, dynkin_q, expand_in_sigma, multiply


def S(n, *members):
    return Subset.from_members(n, members)


def test_n2_table():
    e, one = S(2), S(2, 1)
    assert coeff_vnq(2, e, e) == 1 + Q
    assert coeff_vnq(2, e, one) == -Q
    assert coeff_vnq(2, one, one) == 1 - Q
    assert coeff_vnq(2, one, e) == 0
    M = vnq_action_matrix(2)
    # entries[K][I]; the columns are the images V B_I
    assert M.entries == ((1 + Q, 0), (-Q, 1 - Q))
    assert (M.column(e), M.column(one)) == ((1 + Q, -Q), (0, 1 - Q))
    assert vnq_action_matrix(1).entries == ((1,),)


@pytest.mark.parametrize("n", range(1, 8))
def test_specializations_at_zero_and_one(n):
    for K in all_subsets(n):
        for I in all_subsets(n):
            assert coeff_vnq(n, I, K, 0) == (1 if I == K else 0)
            if I.mask:
                assert coeff_vnq(n, I, K, 1) == 0
    assert coeff_vnq(n, S(n), S(n), 1) == n


def test_coeff_vnk_examples():
    n = 2
    assert coeff_vnk(2, 1, S(2), S(2)) == 1
    I, K = S(5, 3), S(5, 1, 3)
    for k in range(1, 6):
        oracle = expand_in_sigma(multiply(d_element(Subset.prefix(5, k - 1)), b_element(I)))
        assert coeff_vnk(5, k, I, K) == oracle.coefficient(K)
    assert coeff_vnk(5, 2, S(5, 1), S(5, 3)) == 0
    with pytest.raises(ValueError):
        coeff_vnk(n, 0, S(n), S(n))


@pytest.mark.parametrize("n", range(1, 9))
def test_triangular_and_polynomial(n):
    for K in all_subsets(n):
        for I in all_subsets(n):
            c = coeff_vnq(n, I, K)
            if not I.issubset(K):
                assert c == 0
            else:
                assert c.is_polynomial()


@pytest.mark.parametrize("n", range(1, 6))
def test_three_routes_agree(n):
    V = dynkin_q(n, Q)
    for I in all_subsets(n):
        oracle = expand_in_sigma(multiply(V, b_element(I)))
        for K in all_subsets(n):
            assert coeff_vnq(n, I, K) == vnq_via_vnk(n, I, K) == oracle.coefficient(K)


@pytest.mark.parametrize("q", [2, -3, Fraction(1, 2), 0, 1])
def test_integer_q_against_group_algebra(q):
    n = 4
    V = dynkin_q(n, q)
    for I in all_subsets(n):
        oracle = expand_in_sigma(multiply(V, b_element(I)))
        for K in all_subsets(n):
            assert coeff_vnq(n, I, K, q) == oracle.coefficient(K)


@pytest.mark.parametrize("n", range(1, 7))
def test_left_action_matches_mackey_product(n):
    V = dynkin_sigma(n)
    assert V == expand_in_sigma(dynkin_q(n, Q))
    for I in all_subsets(n):
        f = SigmaElement.basis_element(n, I, "D")
        assert left_multiply_dynkin(f) == multiply_sigma(V, f)


def test_eigenvalue_examples():
    n = 5
    eig = eigenvalues(n)
    assert eig[S(n)] == q_integer(n, Q)
    assert eig[Subset.full(n)] == (1 - Q) ** (n - 1)
    at_minus_one = eigenvalues(4, CyclotomicNumber.zeta(2))
    assert at_minus_one[S(4, 2)] == 0
    assert eigenvalues(4, -1)[S(4, 2)] == 0
    assert eigenvalues(3, 1) == {S(3): 3, S(3, 1): 0, S(3, 2): 0, S(3, 1, 2): 0}
    assert eigenvalues(3, 2)[S(3)] == 7


@pytest.mark.parametrize("n", range(1, 10))
def test_diagonal_is_eigenvalues(n):
    M = vnq_action_matrix(n)
    eig = eigenvalues(n)
    for I in all_subsets(n):
        prod = LaurentPoly.constant(1)
        for v in comp_of(I):
            prod = prod * (1 - Q ** v)
        assert (1 - Q) * M.entry(I, I) == prod
        assert eig[I] == M.entry(I, I)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_root_of_unity_eigenvalues_vanish(p):
    n = 6
    eig = eigenvalues(n, CyclotomicNumber.zeta(p))
    for I, e in eig.items():
        assert (e == 0) == any(v % p == 0 for v in comp_of(I))


def test_zero_predicate_kinds():
    n = 4
    I, K = S(n, 2), S(n, 1, 2)
    assert zero_coeff_predicate(n, "one", I, K)
    assert not zero_coeff_predicate(n, "one", S(n), K)
    assert zero_coeff_predicate(n, "zero", I, K)
    assert not zero_coeff_predicate(n, "zero", K, K)
    assert not zero_coeff_predicate(n, "generic", I, K)
    assert zero_coeff_predicate(n, "generic", K, I)
    with pytest.raises(ValueError):
        zero_coeff_predicate(n, "root", I, K)
    with pytest.raises(ValueError):
        zero_coeff_predicate(n, "other", I, K)


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("kind,q,p", [("root", CyclotomicNumber.zeta(2), 2),
                                      ("root", CyclotomicNumber.zeta(3), 3),
                                      ("root", CyclotomicNumber.zeta(4), 4),
                                      ("root", CyclotomicNumber.zeta(5), 5),
                                      ("one", 1, None), ("zero", 0, None), ("generic", 2, None)])
def test_zero_classification(n, kind, q, p):
    for K in all_subsets(n):
        for I in all_subsets(n):
            assert (coeff_vnq(n, I, K, q) == 0) == zero_coeff_predicate(n, kind, I, K, p)


def test_peak_base_case():
    assert peak_expand(2) == SigmaElement.basis_element(2, S(2, 1))
    assert dynkin_q(4, -1).items() and all(c == 1 for _, c in dynkin_q(4, -1).items())


@pytest.mark.parametrize("n", range(1, 10))
def test_peak_formula(n):
    for I in all_subsets(n):
        f = peak_expand(n, I)
        for K in all_subsets(n):
            assert f.coefficient(K) == coeff_vnq(n, I, K, -1)


def test_action_matrix_errors():
    with pytest.raises(ValueError):
        vnq_action_matrix(3, 0)
    with pytest.raises(ValueError):
        coeff_vnq(3, S(3), S(4))
    with pytest.raises(ValueError):
        dynkin_sigma(0)
