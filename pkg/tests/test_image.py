from fractions import Fraction

import pytest

from descalg.compositions import Subset, all_subsets, fibonacci_order
from descalg.dynkin import vnq_action_matrix
from descalg.image import (NotAFieldError, Relation, action_rank, exact_rank, image_dimension,
                           image_relations, is_diagonalizable, relation_matrix)
from descalg.scalars import Q, CyclotomicNumber


def S(n, *members):
    return Subset.from_members(n, members)


def test_exact_rank_basics():
    assert exact_rank([[1 if i == j else 0 for j in range(5)] for i in range(5)]) == 5
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[Fraction(1, 3), 1], [1, 3], [0, 1]]) == 2
    z = CyclotomicNumber.zeta(3)
    assert exact_rank([[1, z], [z, z * z]]) == 1
    assert exact_rank(vnq_action_matrix(3, CyclotomicNumber.zeta(2)).entries) == 2
    with pytest.raises(NotAFieldError):
        exact_rank([[Q]])


def test_image_dimension_examples():
    assert image_dimension(3, 2) == 2
    assert image_dimension(5, 2) == 5
    assert image_dimension(2, 2) == 1
    for n in range(1, 5):
        assert image_dimension(n, 5) == 2 ** (n - 1)
    with pytest.raises(ValueError):
        image_dimension(3, 1)


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
def test_rank_is_fibonacci(n, p):
    assert image_dimension(n, p) == fibonacci_order(n, p)


@pytest.mark.parametrize("q", [2, 3, -2, Fraction(1, 3)])
def test_rank_at_non_roots(q):
    for n in range(1, 7):
        assert action_rank(n, q) == 2 ** (n - 1)


def test_relation_examples():
    assert image_relations(2, 2) == [Relation("a", S(2))]
    rels = image_relations(3, 2)
    # (1,2) ends in its even part; (2,1) merges to (3)
    assert rels == [Relation("a", S(3, 1)), Relation("b", S(3, 2), S(3))]
    assert Relation("b", S(3, 2), S(3)).coefficients() == {S(3): 1, S(3, 2): 1}
    assert relation_matrix(3, rels) == [[0, 1, 0, 0], [1, 0, 1, 0]]


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_relations_cut_out_the_image(n, p):
    rels = image_relations(n, p)
    assert len(rels) == 2 ** (n - 1) - fibonacci_order(n, p)
    assert len({r.K for r in rels}) == len(rels)
    M = vnq_action_matrix(n, CyclotomicNumber.zeta(p))
    for I in all_subsets(n):
        col = M.column(I)
        for rel in rels:
            assert rel.evaluate(lambda s: col[s.mask]) == 0
    assert exact_rank(relation_matrix(n, rels)) == len(rels)


# regression snapshots of an exploratory probe; not statements of truth
DIAG_SNAPSHOT = {
    "symbolic": [True] * 6,
    "root:2": [True] * 6,
    "root:3": [True] * 6,
    "int:2": [True] * 6,
}
PROBE_Q = {"symbolic": None, "root:2": CyclotomicNumber.zeta(2),
           "root:3": CyclotomicNumber.zeta(3), "int:2": 2}


@pytest.mark.parametrize("label", sorted(DIAG_SNAPSHOT))
def test_diagonalizability_snapshot(label):
    got = [is_diagonalizable(n, PROBE_Q[label]) for n in range(1, 7)]
    assert got == DIAG_SNAPSHOT[label]


def test_diagonalizability_edge_cases():
    assert is_diagonalizable(1, 5)
    assert is_diagonalizable(4, 0)
    # at q = 1 the action is n times a projection onto a line
    assert is_diagonalizable(4, 1)
    with pytest.raises(NotAFieldError):
        is_diagonalizable(3, 1.5)
