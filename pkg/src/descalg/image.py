"""
Linear algebra on the action of V_n^(q): exact rank, the dimension of the
image V_n^(q) Sigma_n at roots of unity, the linear relations cutting it
out, and a probe for diagonalizability.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .compositions import Subset, all_subsets, comp_of, set_of
from .dynkin import vnq_action_matrix
from .scalars import CyclotomicNumber, LaurentPoly, is_field_scalar, is_rational


class NotAFieldError(TypeError):
    """Raised when an operation needs division but the scalars are not a field."""


def _inverse(x):
    if is_rational(x):
        return Fraction(1) / Fraction(x)
    return x.inverse()


def exact_rank(matrix: Iterable[Sequence]) -> int:
    """
    Rank by exact Gaussian elimination over Q or Q(zeta_p).

    Rows are processed in order; each is reduced at its leftmost nonzero
    column against the pivot row owning that column, or becomes that
    column's pivot row.
    """
    pivots: dict[int, dict[int, object]] = {}
    for row in matrix:
        vec = {}
        for j, x in enumerate(row):
            if not is_field_scalar(x):
                raise NotAFieldError(f"exact_rank needs field scalars, got {type(x).__name__}")
            if x != 0:
                vec[j] = x
        while vec:
            c = min(vec)
            piv = pivots.get(c)
            if piv is None:
                inv = _inverse(vec[c])
                pivots[c] = {j: x * inv for j, x in vec.items()}
                break
            f = vec[c]
            for j, x in piv.items():
                v = vec.get(j, 0) - f * x
                if v == 0:
                    vec.pop(j, None)
                else:
                    vec[j] = v
    return len(pivots)


def image_dimension(n: int, p: int) -> int:
    """dim V_n^(q) Sigma_n at q a primitive p-th root of unity, by exact rank."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    return action_rank(n, CyclotomicNumber.zeta(p))


def action_rank(n: int, q) -> int:
    """Rank of u -> V_n^(q) u for a field scalar q."""
    M = vnq_action_matrix(n, q)
    # rank of the columns V B_I; the lower-triangular shape makes most of them pivots outright
    return exact_rank(M.column(I) for I in all_subsets(n))


class Relation(NamedTuple):
    """
    A linear relation on the B-coefficients of every element of the image:
    kind ``a`` says [B_K] f = 0, kind ``b`` says [B_K'] f + [B_K] f = 0.
    """

    kind: str
    K: Subset
    K_prime: Subset | None = None

    def coefficients(self) -> dict[Subset, int]:
        if self.kind == "a":
            return {self.K: 1}
        return {self.K_prime: 1, self.K: 1}

    def evaluate(self, coeffs) -> object:
        """Apply to a mapping (or callable) subset -> coefficient."""
        get = coeffs if callable(coeffs) else (lambda s: coeffs.get(s, 0))
        total = 0
        for s, c in self.coefficients().items():
            total = total + c * get(s)
        return total


def image_relations(n: int, p: int) -> list[Relation]:
    """
    One relation for each K whose composition has a part divisible by p,
    keyed on the last such part: kind ``a`` if it is the final part,
    otherwise kind ``b`` pairing K with the K' obtained by merging it with
    the part after it.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    out = []
    for K in all_subsets(n):
        alpha = comp_of(K)
        hits = [i for i, a in enumerate(alpha) if a % p == 0]
        if not hits:
            continue
        m = hits[-1]
        if m == len(alpha) - 1:
            out.append(Relation("a", K))
        else:
            merged = alpha[:m] + (alpha[m] + alpha[m + 1],) + alpha[m + 2:]
            out.append(Relation("b", K, set_of(merged)))
    return out


def relation_matrix(n: int, relations: Sequence[Relation]) -> list[list[int]]:
    subsets = list(all_subsets(n))
    return [[rel.coefficients().get(s, 0) for s in subsets] for rel in relations]


# ---------------------------------------------------------------------------
# diagonalizability


def _tri_mul(A: dict, B: dict) -> dict:
    """Product of matrices supported on pairs (K, I) with I inside K, keyed by masks."""
    out: dict = {}
    by_row: dict[int, list] = {}
    for (k, l), x in A.items():
        by_row.setdefault(k, []).append((l, x))
    by_col_row: dict[int, list] = {}
    for (l, i), y in B.items():
        by_col_row.setdefault(l, []).append((i, y))
    for k, row in by_row.items():
        for l, x in row:
            for i, y in by_col_row.get(l, ()):
                key = (k, i)
                v = out.get(key, 0) + x * y
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
    return out


def is_diagonalizable(n: int, q=None) -> bool:
    """
    Whether u -> V_n^(q) u is diagonalizable (an exploratory probe).

    The action matrix is triangular, so with e running over its distinct
    diagonal values it is diagonalizable iff prod_e (M - e Id) = 0.  Only
    ring operations are used, so symbolic q (``None``) works as well, as an
    element of Q(q); q = 0 gives the identity.
    """
    if q is not None and not (is_field_scalar(q) or isinstance(q, LaurentPoly)):
        raise NotAFieldError(f"unsupported scalar {type(q).__name__}")
    if q is not None and q == 0:
        return True
    M = vnq_action_matrix(n, q)
    size = M.size
    base = {(k, i): M.entries[k][i] for k in range(size) for i in range(size)
            if M.entries[k][i] != 0}
    distinct = list(dict.fromkeys(M.diagonal()))
    product = None
    for e in distinct:
        shifted = dict(base)
        for d in range(size):
            v = shifted.get((d, d), 0) - e
            if v == 0:
                shifted.pop((d, d), None)
            else:
                shifted[(d, d)] = v
        product = shifted if product is None else _tri_mul(product, shifted)
        if not product:
            return True
    return not product
