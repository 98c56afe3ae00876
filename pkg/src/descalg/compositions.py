"""
Compositions of n, subsets of [n-1] and the combinatorics relating them.

A composition is a plain tuple of positive integers.  A subset of [n-1] is a
:class:`Subset`, i.e. an ambient size together with a bitmask in which bit
``i - 1`` is set iff ``i`` is a member.  Enumerations always run in
increasing bitmask order, which is the row/column order of every matrix the
package produces.
"""
from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple, Sequence

Composition = tuple


class NotARefinementError(ValueError):
    """Raised when a composition does not refine another one."""


class Subset(NamedTuple):
    """A subset of {1, ..., n-1}."""

    n: int
    mask: int

    @classmethod
    def from_members(cls, n: int, members) -> "Subset":
        mask = 0
        for i in members:
            if not 1 <= i <= n - 1:
                raise ValueError(f"{i} is not in [1, {n - 1}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, (1 << max(n - 1, 0)) - 1)

    @classmethod
    def prefix(cls, n: int, k: int) -> "Subset":
        """The subset [k] = {1, ..., k}."""
        return cls(n, (1 << k) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n - 1) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i) -> bool:
        return 1 <= i <= self.n - 1 and bool(self.mask >> (i - 1) & 1)

    def issubset(self, other: "Subset") -> bool:
        _check_same_n(self, other)
        return self.mask & ~other.mask == 0

    def submasks(self) -> Iterator["Subset"]:
        """All subsets of this subset, in increasing bitmask order."""
        subs = []
        sub = self.mask
        while True:
            subs.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & self.mask
        for s in reversed(subs):
            yield Subset(self.n, s)

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def _check_same_n(a: Subset, b: Subset) -> None:
    if a.n != b.n:
        raise ValueError(f"subsets live in different ambient sizes: {a.n} != {b.n}")


def check_composition(alpha: Sequence[int]) -> Composition:
    alpha = tuple(alpha)
    if any((not isinstance(a, int)) or a < 1 for a in alpha):
        raise ValueError(f"composition parts must be positive integers: {alpha}")
    return alpha


def set_of(alpha: Sequence[int]) -> Subset:
    """
    Partial sums of ``alpha`` (excluding the total), as a subset of [n-1].

    >>> set_of((1, 2, 2)).members
    (1, 3)
    """
    alpha = check_composition(alpha)
    n = sum(alpha)
    mask = 0
    for s in itertools.accumulate(alpha[:-1]):
        mask |= 1 << (s - 1)
    return Subset(n, mask)


def comp_of(subset: Subset) -> Composition:
    """
    Inverse of :func:`set_of`.

    >>> comp_of(Subset.from_members(5, [3]))
    (3, 2)
    """
    n = subset.n
    if n == 0:
        return ()
    parts = []
    last = 0
    for i in subset.members:
        parts.append(i - last)
        last = i
    parts.append(n - last)
    return tuple(parts)


def refines(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """True iff ``alpha`` splits into consecutive blocks summing to the parts of ``beta``."""
    a, b = set_of(alpha), set_of(beta)
    if a.n != b.n:
        raise ValueError(f"compositions of different sizes: {a.n} != {b.n}")
    return b.issubset(a)


def split(alpha: Sequence[int], beta: Sequence[int]) -> tuple[Composition, ...]:
    """
    The block decomposition alpha|beta.

    >>> split((1, 2, 3, 1), (3, 4))
    ((1, 2), (3, 1))
    """
    alpha, beta = check_composition(alpha), check_composition(beta)
    if sum(alpha) != sum(beta):
        raise ValueError(f"compositions of different sizes: {sum(alpha)} != {sum(beta)}")
    blocks = []
    it = iter(alpha)
    for target in beta:
        block = []
        total = 0
        while total < target:
            part = next(it)
            block.append(part)
            total += part
        if total != target:
            raise NotARefinementError(f"{alpha} does not refine {beta}")
        blocks.append(tuple(block))
    return tuple(blocks)


def last_parts(K: Subset, I: Subset) -> Composition | None:
    """
    The rightmost entry of each block of comp(K)|comp(I), or ``None`` when
    I is not contained in K (the overline is undefined there).
    """
    _check_same_n(K, I)
    if not I.issubset(K):
        return None
    return tuple(block[-1] for block in split(comp_of(K), comp_of(I)))


def all_subsets(n: int) -> Iterator[Subset]:
    for mask in range(1 << max(n - 1, 0)):
        yield Subset(n, mask)


def all_compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, in subset-bitmask order."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        yield ()
        return
    for s in all_subsets(n):
        yield comp_of(s)


def comps_avoiding_multiples(n: int, p: int) -> Iterator[Composition]:
    """Compositions of n with no part divisible by p."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    for alpha in all_compositions(n):
        if all(a % p for a in alpha):
            yield alpha


def fibonacci_order(n: int, p: int) -> int:
    """
    Fibonacci number of order p: s_0 = 0, s_n = 2^(n-1) for 1 <= n < p, and
    s_n = s_(n-1) + ... + s_(n-p) beyond.

    >>> [fibonacci_order(n, 2) for n in range(7)]
    [0, 1, 1, 2, 3, 5, 8]
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    s = [0] + [2 ** (m - 1) for m in range(1, min(n, p - 1) + 1)]
    for m in range(len(s), n + 1):
        s.append(sum(s[m - p:m]))
    return s[n]


def subsequences(seq: Sequence) -> Iterator[tuple[tuple[int, ...], tuple]]:
    """
    All 2^len(seq) subsequences, chosen by position: yields ``(positions, values)``.
    Repeated values give distinct subsequences.
    """
    seq = tuple(seq)
    for mask in range(1 << len(seq)):
        pos = tuple(i for i in range(len(seq)) if mask >> i & 1)
        yield pos, tuple(seq[i] for i in pos)
