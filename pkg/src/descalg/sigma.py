"""
Elements of the descent algebra in the B (subset) and D (descent class)
bases, and their multiplication through Solomon's Mackey formula.

Throughout, the product ``f * g`` is the product in the group algebra with
the convention ``compose(s, p) = s o p`` (apply ``p`` first).  With that
convention ``[B_K] B_J B_I`` counts the nonnegative integer matrices whose
row sums are comp(I) (the *right* factor), whose column sums are comp(J)
and whose reduced reading word is comp(K).  This was settled against the
brute-force group algebra product; see :data:`MACKEY_ROW_FACTOR`.
"""
from __future__ import annotations

import functools
from typing import Iterator, Mapping

from .compositions import Subset, all_subsets, comp_of, set_of, split

#: Which factor of ``B_J * B_I`` supplies the row sums of the Mackey matrices.
MACKEY_ROW_FACTOR = "right"

Matrix = tuple


def _accumulate(acc: dict, key, value) -> None:
    if value == 0:
        return
    v = acc.get(key)
    v = value if v is None else v + value
    if v == 0:
        acc.pop(key, None)
    else:
        acc[key] = v


class SigmaElement:
    """
    Sparse element of the descent algebra: subset -> coefficient, in basis B or D.

    >>> n = 3
    >>> one = SigmaElement.basis_element(n, Subset.empty(n))
    >>> one * one == one
    True
    """

    __slots__ = ("n", "basis", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Subset, object] = None, basis: str = "B"):
        if basis not in ("B", "D"):
            raise ValueError(f"basis must be 'B' or 'D', got {basis!r}")
        clean = {}
        for key, c in (coeffs or {}).items():
            if key.n != n:
                raise ValueError(f"subset {key} does not live in [{n - 1}]")
            if key.mask >> max(n - 1, 0):
                raise ValueError(f"subset mask {key.mask} exceeds [{n - 1}]")
            _accumulate(clean, key, c)
        self.n = n
        self.basis = basis
        self._coeffs = dict(sorted(clean.items(), key=lambda kv: kv[0].mask))

    @classmethod
    def basis_element(cls, n: int, subset: Subset, basis: str = "B", coeff=1) -> "SigmaElement":
        return cls(n, {subset: coeff}, basis)

    @classmethod
    def zero(cls, n: int, basis: str = "B") -> "SigmaElement":
        return cls(n, {}, basis)

    @property
    def coeffs(self) -> dict[Subset, object]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def coefficient(self, subset: Subset):
        return self._coeffs.get(subset, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def to_b(self) -> "SigmaElement":
        return self if self.basis == "B" else d_to_b(self)

    def to_d(self) -> "SigmaElement":
        return self if self.basis == "D" else b_to_d(self)

    def _same_space(self, other: "SigmaElement") -> "SigmaElement":
        if other.n != self.n:
            raise ValueError(f"elements of different descent algebras: n={self.n} vs n={other.n}")
        return other if other.basis == self.basis else (other.to_b() if self.basis == "B" else other.to_d())

    def __add__(self, other):
        if not isinstance(other, SigmaElement):
            return NotImplemented
        other = self._same_space(other)
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            _accumulate(acc, k, c)
        return SigmaElement(self.n, acc, self.basis)

    def __neg__(self):
        return SigmaElement(self.n, {k: -c for k, c in self._coeffs.items()}, self.basis)

    def __sub__(self, other):
        if not isinstance(other, SigmaElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SigmaElement):
            return multiply_sigma(self, other)
        return SigmaElement(self.n, {k: c * other for k, c in self._coeffs.items()}, self.basis)

    def __rmul__(self, other):
        return SigmaElement(self.n, {k: other * c for k, c in self._coeffs.items()}, self.basis)

    def __eq__(self, other):
        if not isinstance(other, SigmaElement):
            return NotImplemented
        if other.n != self.n:
            return False
        if other.basis != self.basis:
            return self.to_b()._coeffs == other.to_b()._coeffs
        return self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*{self.basis}{k}" for k, c in self._coeffs.items()) or "0"
        return f"SigmaElement(n={self.n}, {body})"


def b_to_d(f: SigmaElement) -> SigmaElement:
    """B_I = sum_{J subset I} D_J."""
    if f.basis != "B":
        raise ValueError("b_to_d expects an element in the B basis")
    acc: dict = {}
    for I, c in f.items():
        for J in I.submasks():
            _accumulate(acc, J, c)
    return SigmaElement(f.n, acc, "D")


def d_to_b(f: SigmaElement) -> SigmaElement:
    """D_I = sum_{J subset I} (-1)^|I - J| B_J."""
    if f.basis != "D":
        raise ValueError("d_to_b expects an element in the D basis")
    acc: dict = {}
    for I, c in f.items():
        size = I.size
        for J in I.submasks():
            _accumulate(acc, J, c if (size - J.size) % 2 == 0 else -c)
    return SigmaElement(f.n, acc, "B")


# ---------------------------------------------------------------------------
# Mackey matrices


def _bounded_rows(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Vectors v with 0 <= v_j <= caps_j and sum(v) == total."""
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    rest_cap = sum(caps[1:])
    for v in range(max(0, total - rest_cap), min(total, caps[0]) + 1):
        for tail in _bounded_rows(total - v, caps[1:]):
            yield (v,) + tail


def _matrices(rows: tuple[int, ...], cols: tuple[int, ...]) -> Iterator[Matrix]:
    if len(rows) == 1:
        yield (cols,)
        return
    for row in _bounded_rows(rows[0], cols):
        rest = tuple(c - r for c, r in zip(cols, row))
        for tail in _matrices(rows[1:], rest):
            yield (row,) + tail


def reading_word(A: Matrix) -> tuple[int, ...]:
    """Concatenation of the rows of ``A`` with zeros removed."""
    return tuple(x for row in A for x in row if x)


def enumerate_mackey_matrices(I: Subset, J: Subset) -> Iterator[tuple[Matrix, Subset]]:
    """
    All nonnegative integer matrices with row sums comp(I) and column sums
    comp(J), each paired with the subset K whose composition is its reduced
    reading word.
    """
    if I.n != J.n:
        raise ValueError(f"subsets of different sizes: {I.n} != {J.n}")
    if I.n == 0:
        yield (), Subset(0, 0)
        return
    for A in _matrices(comp_of(I), comp_of(J)):
        yield A, set_of(reading_word(A))


def mackey_count(I: Subset, J: Subset, K: Subset) -> int:
    """
    |N^{I,J}_K| computed for a fixed target K: row i must read the i-th block
    of comp(K)|comp(I), so only the column placement of each block is searched.
    """
    if not (I.n == J.n == K.n):
        raise ValueError("subsets of different sizes")
    if not I.issubset(K):
        return 0
    blocks = split(comp_of(K), comp_of(I))
    cols = comp_of(J)

    def place(i: int, caps: tuple[int, ...]) -> int:
        if i == len(blocks):
            return 1 if not any(caps) else 0
        block = blocks[i]
        total = 0

        def walk(j: int, start: int, caps: tuple[int, ...]) -> int:
            if j == len(block):
                return place(i + 1, caps)
            count = 0
            # leave room for the remaining entries of the block
            for c in range(start, len(caps) - (len(block) - j) + 1):
                if caps[c] >= block[j]:
                    count += walk(j + 1, c + 1, caps[:c] + (caps[c] - block[j],) + caps[c + 1:])
            return count

        total += walk(0, 0, caps)
        return total

    return place(0, cols)


@functools.lru_cache(maxsize=None)
def _multiply_b_terms(I: Subset, J: Subset) -> tuple[tuple[Subset, int], ...]:
    counts: dict[Subset, int] = {}
    for _, K in enumerate_mackey_matrices(I, J):
        counts[K] = counts.get(K, 0) + 1
    return tuple(sorted(counts.items(), key=lambda kv: kv[0].mask))


def multiply_b(I: Subset, J: Subset) -> SigmaElement:
    """
    The product B_J * B_I expanded in the B basis, with
    [B_K] = |N^{I,J}_K| counted by matrix enumeration.
    """
    if I.n != J.n:
        raise ValueError(f"subsets of different sizes: {I.n} != {J.n}")
    return SigmaElement(I.n, dict(_multiply_b_terms(I, J)), "B")


def multiply_sigma(f: SigmaElement, g: SigmaElement) -> SigmaElement:
    """The product f * g, bilinearly from :func:`multiply_b`; result in the B basis."""
    if f.n != g.n:
        raise ValueError(f"elements of different descent algebras: n={f.n} vs n={g.n}")
    f, g = f.to_b(), g.to_b()
    acc: dict = {}
    for J, fj in f.items():
        for I, gi in g.items():
            c = fj * gi
            for K, cnt in _multiply_b_terms(I, J):
                _accumulate(acc, K, c * cnt)
    return SigmaElement(f.n, acc, "B")


def sigma_basis(n: int):
    """Subsets of [n-1] in bitmask order (the index set of both bases)."""
    return list(all_subsets(n))
