"""
Closed formulas for the left action of the q-deformed Dynkin operator on
the B basis, and what follows from them: the action matrix, its
eigenvalues, which of its entries vanish, and the q = -1 (peak) expansion.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .compositions import Subset, all_subsets, comp_of, last_parts, subsequences
from .scalars import Q, LaurentPoly, evaluate_at, is_rational, q_integer
from .sigma import SigmaElement, _accumulate


def dynkin_sigma(n: int, q=None) -> SigmaElement:
    """V_n^(q) in the D basis: sum_k (-q)^(k-1) D_[k-1]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    q = Q if q is None else q
    return SigmaElement(n, {Subset.prefix(n, k - 1): (-q) ** (k - 1) for k in range(1, n + 1)}, "D")


def coeff_vnk(n: int, k: int, I: Subset, K: Subset) -> int:
    """
    [B_K] D_[k-1] B_I as a signed count of subsequences U of the last parts
    of comp(K)|comp(I) with sum(U) > n - k.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    bar = last_parts(K, I)
    if bar is None:
        return 0
    total = 0
    for _, values in subsequences(bar):
        if sum(values) > n - k:
            total += -1 if len(values) % 2 else 1
    return total if (k + K.size) % 2 == 0 else -total


@functools.lru_cache(maxsize=None)
def _coeff_vnq_symbolic(n: int, I: Subset, K: Subset) -> LaurentPoly:
    bar = last_parts(K, I)
    if bar is None:
        return LaurentPoly()
    qinv = Q ** -1
    value = (-1) ** K.size * Q ** (n - 1) * (1 - qinv) ** I.size
    for v in bar:
        value = value * q_integer(v, qinv)
    return value


def coeff_vnq(n: int, I: Subset, K: Subset, q=None):
    """
    [B_K] V_n^(q) B_I.  Computed once as a Laurent polynomial in q (always a
    genuine polynomial) and then evaluated at ``q`` when one is given.

    >>> n = 2; e, one = Subset.empty(n), Subset.full(n)
    >>> [str(coeff_vnq(n, I, K)) for I, K in [(e, e), (e, one), (one, one), (one, e)]]
    ['1+q', '-q', '1-q', '0']
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (I.n == K.n == n):
        raise ValueError("subsets must live in [n-1]")
    return evaluate_at(_coeff_vnq_symbolic(n, I, K), q)


def vnq_via_vnk(n: int, I: Subset, K: Subset) -> LaurentPoly:
    """sum_k (-q)^(k-1) [B_K] V_{n,k} B_I as a Laurent polynomial."""
    return sum((LaurentPoly({k - 1: (-1) ** (k - 1) * coeff_vnk(n, k, I, K)}) for k in range(1, n + 1)),
               LaurentPoly())


@dataclass(frozen=True)
class LeftActionMatrix:
    """
    Matrix of u -> V_n^(q) u on the B basis.  ``entries[r][c]`` is
    [B_K] V_n^(q) B_I with K the r-th and I the c-th subset in bitmask order.
    """

    n: int
    q: object
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def subsets(self) -> list[Subset]:
        return list(all_subsets(self.n))

    def entry(self, K: Subset, I: Subset):
        return self.entries[K.mask][I.mask]

    def column(self, I: Subset) -> tuple:
        return tuple(row[I.mask] for row in self.entries)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(self.size))


def vnq_action_matrix(n: int, q=None) -> LeftActionMatrix:
    """The full 2^(n-1) square action matrix; ``q=None`` means symbolic q."""
    if q is not None and q == 0:
        raise ValueError("q = 0 is not invertible; V_n^(0) is the identity")
    subsets = list(all_subsets(n))
    zero = coeff_vnq(n, subsets[0], subsets[0], q) * 0
    rows = []
    for K in subsets:
        row = []
        for I in subsets:
            row.append(coeff_vnq(n, I, K, q) if I.issubset(K) else zero)
        rows.append(tuple(row))
    return LeftActionMatrix(n, q, tuple(rows))


def left_multiply_dynkin(f: SigmaElement, q=None) -> SigmaElement:
    """V_n^(q) * f using the closed-form action on the B basis."""
    n = f.n
    acc: dict = {}
    for I, c in f.to_b().items():
        for K in all_subsets(n):
            if I.issubset(K):
                _accumulate(acc, K, coeff_vnq(n, I, K, q) * c)
    return SigmaElement(n, acc, "B")


def eigenvalues(n: int, q=None) -> dict[Subset, object]:
    """
    The eigenvalues e_I of u -> V_n^(q) u, defined by
    (1 - q) e_I = prod_{v in comp(I)} (1 - q^v).

    Symbolic q uses exact Laurent division; numeric q != 1 uses field
    division; q = 1 is the limit family e_empty = n, e_I = 0 otherwise.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = {}
    if q is not None and q == 1:
        for I in all_subsets(n):
            out[I] = n if I.mask == 0 else 0
        return out
    x = Q if q is None else (Fraction(q) if is_rational(q) else q)
    denom = 1 - x
    for I in all_subsets(n):
        num = x ** 0
        for v in comp_of(I):
            num = num * (1 - x ** v)
        out[I] = num.exact_div(denom) if isinstance(num, LaurentPoly) else num / denom
    return out


QKINDS = ("root", "one", "zero", "generic")


def zero_coeff_predicate(n: int, kind: str, I: Subset, K: Subset, p: int | None = None) -> bool:
    """
    Whether [B_K] V_n^(q) B_I vanishes, decided combinatorially from the kind
    of q: ``root`` (primitive p-th root of unity, p > 1), ``one``, ``zero``
    or ``generic`` (nonzero, not a root of unity).
    """
    if kind == "one":
        return I.mask != 0
    if kind == "zero":
        return I != K
    if kind == "generic":
        return not I.issubset(K)
    if kind == "root":
        if p is None or p < 2:
            raise ValueError("kind 'root' needs p >= 2")
        bar = last_parts(K, I)
        return bar is None or any(v % p == 0 for v in bar)
    raise ValueError(f"unknown q kind {kind!r}; expected one of {QKINDS}")


def peak_expand(n: int, I: Subset | None = None) -> SigmaElement:
    """
    V_n^(-1) B_I = 2^|I| sum over K containing I whose last parts
    comp(K)|comp(I) are all odd of (-1)^(n-1-|K|) B_K.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    I = Subset.empty(n) if I is None else I
    acc = {}
    for K in all_subsets(n):
        bar = last_parts(K, I)
        if bar is not None and all(v % 2 for v in bar):
            acc[K] = 2 ** I.size * (-1) ** ((n - 1 - K.size) % 2)
    return SigmaElement(n, acc, "B")
