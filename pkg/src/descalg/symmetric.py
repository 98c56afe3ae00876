"""
Permutations, the group algebra kS_n, and the Dynkin operator inside it.

This is the brute-force side of the package: everything here works with
explicit permutations and is only meant for small n (n! terms).

Permutations are tuples in one-line notation with values 1..n, and
``compose(s, p)`` is ``i -> s(p(i))``.
"""
from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

import numpy as np

from .compositions import Subset, all_subsets
from .sigma import SigmaElement, _accumulate

Permutation = tuple


class NotInDescentAlgebra(ValueError):
    """Raised when a group algebra element is not constant on descent classes."""


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def compose(s: Permutation, p: Permutation) -> Permutation:
    """
    The permutation i -> s(p(i)).

    >>> compose((2, 3, 1), (2, 1, 3))
    (3, 2, 1)
    """
    if len(s) != len(p):
        raise ValueError(f"cannot compose permutations of sizes {len(s)} and {len(p)}")
    return tuple(s[i - 1] for i in p)


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, v in enumerate(w, 1):
        out[v - 1] = i
    return tuple(out)


def descent_set(w: Permutation) -> Subset:
    """
    Positions i with w(i) > w(i+1).

    >>> descent_set((3, 1, 4, 2, 5)).members
    (1, 3)
    """
    mask = 0
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            mask |= 1 << i
    return Subset(len(w), mask)


@functools.lru_cache(maxsize=None)
def permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic order."""
    return tuple(itertools.permutations(range(1, n + 1)))


@functools.lru_cache(maxsize=None)
def descent_classes(n: int) -> dict[Subset, tuple[Permutation, ...]]:
    classes: dict[Subset, list] = {s: [] for s in all_subsets(n)}
    for w in permutations(n):
        classes[descent_set(w)].append(w)
    return {s: tuple(ws) for s, ws in classes.items()}


def is_v_permutation(w: Permutation) -> bool:
    """True iff w(1) > ... > w(k) < w(k+1) < ... < w(n) for some k."""
    k = w.index(1) if w else 0
    return all(w[i] > w[i + 1] for i in range(k)) and all(
        w[i] < w[i + 1] for i in range(k, len(w) - 1))


def cycle(n: int, i: int) -> Permutation:
    """The cycle mapping i, i-1, ..., 2, 1 to i-1, i-2, ..., 1, i; fixes the rest."""
    if not 1 <= i <= n:
        raise ValueError(f"cycle index {i} outside [1, {n}]")
    return (i,) + tuple(range(1, i)) + tuple(range(i + 1, n + 1))


# ---------------------------------------------------------------------------
# product counting


def _encode(arr: np.ndarray, n: int) -> np.ndarray:
    powers = n ** np.arange(n, dtype=np.int64)
    return arr.astype(np.int64) @ powers


def _decode(code: int, n: int) -> Permutation:
    out = []
    for _ in range(n):
        code, r = divmod(code, n)
        out.append(r + 1)
    return tuple(out)


def product_counts(left: Sequence[Permutation], right: Sequence[Permutation]) -> dict[Permutation, int]:
    """Multiplicity of each permutation in (sum of ``left``) * (sum of ``right``)."""
    if not left or not right:
        return {}
    n = len(left[0])
    if n == 0 or len(left) * len(right) < 4096 or n > 12:
        counts: dict[Permutation, int] = defaultdict(int)
        for s in left:
            for p in right:
                counts[tuple(s[i - 1] for i in p)] += 1
        return dict(counts)
    L = np.asarray(left, dtype=np.int8) - 1
    R = np.asarray(right, dtype=np.int8) - 1
    chunk = max(1, 2_000_000 // (len(right) * n))
    totals: dict[int, int] = defaultdict(int)
    for start in range(0, len(L), chunk):
        block = L[start:start + chunk][:, R]          # [a, b, i] = left[a][right[b][i]]
        codes = _encode(block.reshape(-1, n), n)
        uniq, cnt = np.unique(codes, return_counts=True)
        for u, c in zip(uniq.tolist(), cnt.tolist()):
            totals[u] += c
    return {_decode(u, n): c for u, c in totals.items()}


# ---------------------------------------------------------------------------


class GroupAlgebraElement:
    """
    Sparse element of kS_n: permutation -> scalar.

    >>> s = GroupAlgebraElement(2, {(1, 2): 1, (2, 1): 1})
    >>> s * s == 2 * s
    True
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Permutation, object] = None):
        clean: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) != n or not is_permutation(w):
                raise ValueError(f"{w} is not a permutation of [{n}]")
            _accumulate(clean, w, c)
        self.n = n
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "GroupAlgebraElement":
        obj = object.__new__(cls)
        obj.n = n
        obj._terms = dict(sorted(terms.items()))
        return obj

    @classmethod
    def from_permutation(cls, w: Permutation, coeff=1) -> "GroupAlgebraElement":
        return cls(len(w), {w: coeff})

    @classmethod
    def sum_of(cls, n: int, perms: Iterable[Permutation], coeff=1) -> "GroupAlgebraElement":
        return cls._raw(n, {w: coeff for w in perms} if coeff != 0 else {})

    @property
    def terms(self) -> dict[Permutation, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, w: Permutation):
        return self._terms.get(tuple(w), 0)

    def support(self) -> tuple[Permutation, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "GroupAlgebraElement") -> None:
        if other.n != self.n:
            raise ValueError(f"group algebra elements of S_{self.n} and S_{other.n}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(acc, w, c)
        return GroupAlgebraElement._raw(self.n, acc)

    def __neg__(self):
        return GroupAlgebraElement._raw(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return multiply(self, other)
        acc: dict = {}
        for w, c in self._terms.items():
            _accumulate(acc, w, c * other)
        return GroupAlgebraElement._raw(self.n, acc)

    def __rmul__(self, other):
        acc: dict = {}
        for w, c in self._terms.items():
            _accumulate(acc, w, other * c)
        return GroupAlgebraElement._raw(self.n, acc)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*{w}" for w, c in self._terms.items()) or "0"
        return f"GroupAlgebraElement(n={self.n}, {body})"


def _group_by_coefficient(f: GroupAlgebraElement) -> dict:
    groups: dict = defaultdict(list)
    for w, c in f.items():
        groups[c].append(w)
    return groups


def multiply(f: GroupAlgebraElement, g: GroupAlgebraElement) -> GroupAlgebraElement:
    """
    Convolution product in kS_n.  Terms sharing a coefficient are multiplied
    as plain permutation counts first, so scalar arithmetic happens once per
    (output permutation, coefficient pair).
    """
    f._check(g)
    acc: dict = {}
    for cf, left in _group_by_coefficient(f).items():
        for cg, right in _group_by_coefficient(g).items():
            c = cf * cg
            if c == 0:
                continue
            for w, cnt in product_counts(left, right).items():
                _accumulate(acc, w, c * cnt)
    return GroupAlgebraElement._raw(f.n, acc)


def d_element(I: Subset, coeff=1) -> GroupAlgebraElement:
    """D_I: the sum of all permutations with descent set exactly I."""
    return GroupAlgebraElement.sum_of(I.n, descent_classes(I.n)[I], coeff)


def b_element(I: Subset, coeff=1) -> GroupAlgebraElement:
    """B_I: the sum of all permutations with descent set contained in I."""
    classes = descent_classes(I.n)
    perms = [w for J in I.submasks() for w in classes[J]]
    return GroupAlgebraElement.sum_of(I.n, perms, coeff)


def dynkin_q(n: int, q) -> GroupAlgebraElement:
    """
    The q-deformed Dynkin operator: sum over V-permutations w of
    (-q)^(w^-1(1) - 1) w.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    minus_q = -q
    terms = {}
    for w in permutations(n):
        if is_v_permutation(w):
            terms[w] = minus_q ** w.index(1)
    return GroupAlgebraElement(n, terms)


def dynkin_q_product_form(n: int, q) -> GroupAlgebraElement:
    """(1 - q cyc_{2,1}) (1 - q cyc_{3,2,1}) ... (1 - q cyc_{n,...,1})."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    one = q ** 0
    result = GroupAlgebraElement(n, {identity(n): one})
    for i in range(2, n + 1):
        factor = GroupAlgebraElement(n, {identity(n): one, cycle(n, i): -q})
        result = result * factor
    return result


def expand_in_sigma(f: GroupAlgebraElement) -> SigmaElement:
    """
    Expand an element of the descent algebra in the B basis.

    The D-coefficient of each class is read off and every permutation of
    S_n is checked to carry the same coefficient as the rest of its class.
    """
    n = f.n
    d: dict[Subset, object] = {}
    for J, perms in descent_classes(n).items():
        value = f.coefficient(perms[0])
        for w in perms[1:]:
            if f.coefficient(w) != value:
                raise NotInDescentAlgebra(
                    f"permutations {perms[0]} and {w} share descent set {J} "
                    f"but carry coefficients {value} and {f.coefficient(w)}")
        if value != 0:
            d[J] = value
    return SigmaElement(n, d, "D").to_b()


def to_group_algebra(f: SigmaElement) -> GroupAlgebraElement:
    """Materialize an element of the descent algebra as a sum of permutations."""
    d = f.to_d()
    classes = descent_classes(f.n)
    acc: dict = {}
    for J, c in d.items():
        for w in classes[J]:
            acc[w] = c
    return GroupAlgebraElement._raw(f.n, acc)
