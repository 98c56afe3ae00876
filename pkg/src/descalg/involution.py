"""
The sign-reversing involution on N^I_K behind the B-expansion of D_[k-1] B_I.

N^I_K is the set of nonnegative integer matrices with row sums comp(I),
reduced reading word comp(K) and no zero column.  Row i must read the i-th
block of comp(K)|comp(I), so a matrix of N^I_K is fixed by its *pattern*:
the sequence of its columns, each recorded as the bitmask of the rows where
it is nonzero (bit 0 is the top row).  The involution only looks at where
the nonzero entries are, so it is implemented twice: on explicit matrices
(``split_column`` and friends, 0-based column indices) and on patterns,
which is what the exhaustive checks iterate over.
"""
from __future__ import annotations

from typing import Callable, Iterator, NamedTuple, Sequence

from .compositions import NotARefinementError, Subset, comp_of, split, subsequences

Matrix = tuple


class Subsequence(NamedTuple):
    positions: tuple[int, ...]
    values: tuple[int, ...]


# ---------------------------------------------------------------------------
# explicit matrices


def _column(A: Matrix, c: int) -> tuple[int, ...]:
    return tuple(row[c] for row in A)


def num_columns(A: Matrix) -> int:
    return len(A[0]) if A else 0


def _nonzero_rows(col: Sequence[int]) -> list[int]:
    return [r for r, x in enumerate(col) if x]


def is_splittable(A: Matrix, c: int) -> bool:
    """Column ``c`` is not the last one and has at least two nonzero entries."""
    return 0 <= c < num_columns(A) - 1 and len(_nonzero_rows(_column(A, c))) >= 2


def is_mergeable(A: Matrix, c: int) -> bool:
    """
    Columns ``c`` and ``c + 1`` can be merged: ``c + 1`` is not the last
    column and column ``c`` has a single nonzero entry lying strictly above
    every nonzero entry of column ``c + 1``.
    """
    if not 0 <= c < num_columns(A) - 2:
        return False
    left = _nonzero_rows(_column(A, c))
    right = _nonzero_rows(_column(A, c + 1))
    return len(left) == 1 and bool(right) and left[0] < right[0]


def split_column(A: Matrix, c: int) -> Matrix:
    """Move the top nonzero entry of column ``c`` into a new column just left of it."""
    if not is_splittable(A, c):
        raise ValueError(f"column {c} is not splittable")
    top = _nonzero_rows(_column(A, c))[0]
    out = []
    for r, row in enumerate(A):
        new = (row[c] if r == top else 0, 0 if r == top else row[c])
        out.append(row[:c] + new + row[c + 1:])
    return tuple(out)


def merge_columns(A: Matrix, c: int) -> Matrix:
    """Add column ``c`` into column ``c + 1`` and drop column ``c``."""
    if not is_mergeable(A, c):
        raise ValueError(f"columns {c}, {c + 1} are not mergeable")
    return tuple(row[:c] + (row[c] + row[c + 1],) + row[c + 2:] for row in A)


def involution_partner(A: Matrix) -> Matrix | None:
    """
    Split or merge at the leftmost splittable-or-mergeable column;
    ``None`` when there is none (``A`` is a survivor).
    """
    for c in range(num_columns(A) - 1):
        if is_splittable(A, c):
            return split_column(A, c)
        if is_mergeable(A, c):
            return merge_columns(A, c)
    return None


def is_survivor(A: Matrix) -> bool:
    return involution_partner(A) is None


# ---------------------------------------------------------------------------
# patterns


def row_blocks(I: Subset, K: Subset) -> tuple[tuple[int, ...], ...]:
    """The blocks of comp(K)|comp(I); block i is what row i must read."""
    if I.n != K.n:
        raise ValueError("subsets of different sizes")
    if not I.issubset(K):
        raise NotARefinementError(f"{I} is not contained in {K}")
    return split(comp_of(K), comp_of(I))


def walk_patterns(mult: Sequence[int], visit: Callable[[tuple[int, ...]], None]) -> None:
    """
    Call ``visit`` on every sequence of nonempty row sets in which row r
    occurs exactly ``mult[r]`` times.
    """
    rem = list(mult)
    prefix: list[int] = []

    def rec(avail: int) -> None:
        if not avail:
            visit(tuple(prefix))
            return
        s = avail
        while s:
            prefix.append(s)
            freed = 0
            t = s
            while t:
                low = t & -t
                r = low.bit_length() - 1
                rem[r] -= 1
                if rem[r] == 0:
                    freed |= low
                t ^= low
            rec(avail & ~freed)
            t = s
            while t:
                low = t & -t
                rem[low.bit_length() - 1] += 1
                t ^= low
            prefix.pop()
            s = (s - 1) & avail

    rec(sum(1 << r for r, k in enumerate(rem) if k))


def patterns(mult: Sequence[int]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    walk_patterns(mult, out.append)
    return out


def pattern_partner(pat: tuple[int, ...]) -> tuple[int, ...] | None:
    """:func:`involution_partner` on a pattern."""
    last = len(pat) - 1
    for j in range(last):
        c = pat[j]
        if c & (c - 1):
            top = c & -c
            return pat[:j] + (top, c ^ top) + pat[j + 1:]
        if j + 1 < last and c < (pat[j + 1] & -pat[j + 1]):
            return pat[:j] + (c | pat[j + 1],) + pat[j + 2:]
    return None


def decode(pat: Sequence[int], blocks: Sequence[Sequence[int]]) -> Matrix:
    """The matrix with nonzero pattern ``pat`` whose row r reads ``blocks[r]``."""
    rows = [[0] * len(pat) for _ in blocks]
    pos = [0] * len(blocks)
    for j, col in enumerate(pat):
        for r in range(len(blocks)):
            if col >> r & 1:
                rows[r][j] = blocks[r][pos[r]]
                pos[r] += 1
    if any(p != len(b) for p, b in zip(pos, blocks)):
        raise ValueError("pattern does not match the row blocks")
    return tuple(tuple(r) for r in rows)


def encode(A: Matrix) -> tuple[int, ...]:
    return tuple(sum(1 << r for r, x in enumerate(col) if x) for col in zip(*A))


def enumerate_nik(I: Subset, K: Subset) -> Iterator[Matrix]:
    """Every matrix of N^I_K."""
    blocks = row_blocks(I, K)
    for pat in patterns([len(b) for b in blocks]):
        yield decode(pat, blocks)


def enumerate_survivors(I: Subset, K: Subset) -> Iterator[tuple[Matrix, Subsequence]]:
    """
    Each survivor of N^I_K with its subsequence U of last-column entries,
    built directly: rows in U put their last entry in the final column, and
    all other entries get a column of their own, bottom row first.
    """
    blocks = row_blocks(I, K)
    bar = tuple(b[-1] for b in blocks)
    for positions, values in subsequences(bar):
        if not positions:
            continue
        singles = []
        for r in reversed(range(len(blocks))):
            keep = len(blocks[r]) - (1 if r in positions else 0)
            singles.extend([1 << r] * keep)
        pat = tuple(singles) + (sum(1 << r for r in positions),)
        yield decode(pat, blocks), Subsequence(positions, values)


def last_column_sum(A: Matrix) -> int:
    return sum(row[-1] for row in A)


class Census(NamedTuple):
    """What the involution does on every pattern with given row multiplicities."""

    total: int
    survivors: tuple[tuple[int, ...], ...]
    signed_all: dict          # last-column row mask -> sum of (-1)^col
    signed_survivors: dict
    failure: tuple[int, ...] | None   # first pattern where the involution misbehaves


def involution_census(mult: Sequence[int]) -> Census:
    """
    Walk every pattern with row multiplicities ``mult``, checking that the
    partner of each non-survivor is a valid pattern with the same rows and
    last column, has one column more or less, and maps back.
    """
    mult = tuple(mult)
    total = 0
    survivors = []
    signed_all: dict[int, int] = {}
    signed_surv: dict[int, int] = {}
    failure = None

    def counts_of(pat):
        c = [0] * len(mult)
        for col in pat:
            for r in range(len(mult)):
                if col >> r & 1:
                    c[r] += 1
        return tuple(c)

    def visit(pat):
        nonlocal total, failure
        total += 1
        sign = -1 if len(pat) & 1 else 1
        last = pat[-1]
        signed_all[last] = signed_all.get(last, 0) + sign
        partner = pattern_partner(pat)
        if partner is None:
            survivors.append(pat)
            signed_surv[last] = signed_surv.get(last, 0) + sign
            return
        if failure is None and (
                abs(len(partner) - len(pat)) != 1
                or partner[-1] != last
                or pattern_partner(partner) != pat
                or 0 in partner
                or counts_of(partner) != mult):
            failure = pat

    walk_patterns(mult, visit)
    return Census(total, tuple(survivors),
                  {k: v for k, v in signed_all.items() if v},
                  {k: v for k, v in signed_surv.items() if v}, failure)
