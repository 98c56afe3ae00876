"""
The verification suites behind ``descalg verify``.

Each suite turns an n cap (and a seed, for the sampled ones) into an
ordered list of independent cases.  A case is checked by a module-level
function returning ``(checks, counterexample)``, so the cases can be
farmed out to a process pool; results are merged in case order and the
report names the first counterexample in that order, making the output
independent of the number of workers.
"""
from __future__ import annotations

import functools
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, NamedTuple

from .compositions import Subset, all_subsets, comp_of, fibonacci_order, last_parts
from .dynkin import (coeff_vnk, coeff_vnq, dynkin_sigma, eigenvalues, left_multiply_dynkin,
                     peak_expand, vnq_action_matrix, vnq_via_vnk, zero_coeff_predicate)
from .image import action_rank, exact_rank, image_dimension, image_relations, relation_matrix
from .involution import (decode, encode, enumerate_survivors, involution_census,
                         involution_partner, patterns, row_blocks)
from .scalars import Q, CyclotomicNumber, LaurentPoly
from .serialize import scalar_to_json, sigma_to_json
from .sigma import SigmaElement, multiply_b, multiply_sigma, reading_word
from .symmetric import (b_element, dynkin_q, dynkin_q_product_form, expand_in_sigma,
                        multiply)


class Suite(NamedTuple):
    name: str
    cap: int
    cases: Callable[[int, int], list]
    check: Callable
    summary: str


def _sub(n: int, mask: int) -> Subset:
    return Subset(n, mask)


def _jsonable(x):
    if isinstance(x, Subset):
        return list(x.members)
    if isinstance(x, SigmaElement):
        return sigma_to_json(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items())}
    if isinstance(x, (str, bool)) or x is None:
        return x
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return scalar_to_json(x)


def _counterexample(n, I=None, J=None, K=None, expected=None, got=None, **extra) -> dict:
    out = {"n": n, "I": _jsonable(I) if I is not None else None,
           "J": _jsonable(J) if J is not None else None,
           "K": _jsonable(K) if K is not None else None,
           "expected": _jsonable(expected), "got": _jsonable(got)}
    out.update(extra)
    return out


def _first_difference(n, expected: SigmaElement, got: SigmaElement):
    e, g = expected.to_b(), got.to_b()
    for K in all_subsets(n):
        if e.coefficient(K) != g.coefficient(K):
            return K, e.coefficient(K), g.coefficient(K)
    return None


# ---------------------------------------------------------------------------
# mackey-oracle

MACKEY_EXHAUSTIVE = 5
MACKEY_SAMPLES = 200


def mackey_cases(n_cap: int, seed: int) -> list:
    cases = []
    for n in range(1, n_cap + 1):
        size = 1 << (n - 1)
        if n <= MACKEY_EXHAUSTIVE:
            cases.extend((n, i, j) for i in range(size) for j in range(size))
        else:
            rng = random.Random(seed * 1009 + n)
            cases.extend((n, rng.randrange(size), rng.randrange(size)) for _ in range(MACKEY_SAMPLES))
    return cases


def mackey_check(case):
    n, i, j = case
    I, J = _sub(n, i), _sub(n, j)
    got = multiply_b(I, J)
    expected = expand_in_sigma(multiply(b_element(J), b_element(I)))
    diff = _first_difference(n, expected, got)
    if diff:
        K, e, g = diff
        return 1, _counterexample(n, I, J, K, e, g)
    return 1, None


# ---------------------------------------------------------------------------
# vnq-threeway


@functools.lru_cache(maxsize=4)
def _dynkin_symbolic(n: int):
    return dynkin_q(n, Q)


def threeway_cases(n_cap: int, seed: int) -> list:
    return [(n, i) for n in range(1, n_cap + 1) for i in range(1 << (n - 1))]


def threeway_check(case):
    n, i = case
    I = _sub(n, i)
    oracle = expand_in_sigma(multiply(_dynkin_symbolic(n), b_element(I)))
    checks = 0
    for K in all_subsets(n):
        closed = coeff_vnq(n, I, K)
        via_d = vnq_via_vnk(n, I, K)
        brute = oracle.coefficient(K)
        checks += 1
        if not (closed == via_d == brute):
            return checks, _counterexample(n, I, None, K, brute, closed,
                                           via_vnk=_jsonable(via_d))
    return checks, None


# ---------------------------------------------------------------------------
# involution

EXPLICIT_MATRIX_CAP = 6


@functools.lru_cache(maxsize=None)
def _census(mult: tuple[int, ...]):
    return involution_census(mult)


def involution_cases(n_cap: int, seed: int) -> list:
    out = []
    for n in range(1, n_cap + 1):
        for K in all_subsets(n):
            out.extend((n, I.mask, K.mask) for I in K.submasks())
    return out


def _explicit_failure(I: Subset, K: Subset):
    """Run the matrix-level involution on every element of N^I_K."""
    blocks = row_blocks(I, K)
    c = _census(tuple(len(b) for b in blocks))
    for pat in patterns([len(b) for b in blocks]):
        A = decode(pat, blocks)
        B = involution_partner(A)
        if B is None:
            if pat not in c.survivors:
                return A, "matrix survivor missed by the pattern walk"
            continue
        if (encode(B) == pat or involution_partner(B) != A
                or abs(len(B[0]) - len(A[0])) != 1
                or [sum(r) for r in B] != [sum(r) for r in A]
                or reading_word(B) != reading_word(A)):
            return A, "matrix partner is not a sign-reversing inverse"
    return None


def involution_check(case):
    n, i, k = case
    I, K = _sub(n, i), _sub(n, k)
    blocks = row_blocks(I, K)
    bar = last_parts(K, I)
    c = _census(tuple(len(b) for b in blocks))
    if c.failure is not None:
        return 1, _counterexample(n, I, None, K, "involution", None,
                                  matrix=decode(c.failure, blocks))
    if c.signed_all != c.signed_survivors:
        return 1, _counterexample(n, I, None, K, c.signed_all, c.signed_survivors)
    built = {}
    for A, U in enumerate_survivors(I, K):
        if len(A[0]) != 2 + K.size - len(U.values):
            return 2, _counterexample(n, I, None, K, 2 + K.size - len(U.values), len(A[0]),
                                      matrix=A)
        if U.positions in built:
            return 2, _counterexample(n, I, None, K, "distinct U", U.values)
        built[U.positions] = encode(A)
    if sorted(built.values()) != sorted(c.survivors) or len(built) != 2 ** (I.size + 1) - 1:
        return 3, _counterexample(n, I, None, K, len(built), len(c.survivors))
    # the signed count over all of N^I_K, cut at each threshold, is coeff_vnk
    by_sum: dict[int, int] = {}
    for mask, s in c.signed_all.items():
        total = sum(bar[r] for r in range(len(bar)) if mask >> r & 1)
        by_sum[total] = by_sum.get(total, 0) + s
    for kk in range(1, n + 1):
        counted = sum(s for t, s in by_sum.items() if t > n - kk) * (-1) ** kk
        if counted != coeff_vnk(n, kk, I, K):
            return 4, _counterexample(n, I, None, K, coeff_vnk(n, kk, I, K), counted, k=kk)
    if n <= EXPLICIT_MATRIX_CAP:
        bad = _explicit_failure(I, K)
        if bad:
            return 5, _counterexample(n, I, None, K, bad[1], None, matrix=bad[0])
    return 5, None


# ---------------------------------------------------------------------------
# eigenvalues


def per_n_cases(n_cap: int, seed: int) -> list:
    return list(range(1, n_cap + 1))


def eigen_check(n):
    eig = eigenvalues(n)
    checks = 0
    for I in all_subsets(n):
        prod = LaurentPoly.constant(1)
        for v in comp_of(I):
            prod = prod * (1 - Q ** v)
        diag = coeff_vnq(n, I, I)
        checks += 1
        if (1 - Q) * diag != prod or eig[I] != diag:
            return checks, _counterexample(n, I, None, I, prod, (1 - Q) * diag)
    return checks, None


# ---------------------------------------------------------------------------
# zero-class

ZERO_KINDS = (("root", 2), ("root", 3), ("root", 4), ("root", 5), ("one", None),
              ("zero", None), ("generic", None))


def zero_cases(n_cap: int, seed: int) -> list:
    return [(n, kind, p) for n in range(1, n_cap + 1) for kind, p in ZERO_KINDS]


def _q_for(kind, p):
    return {"root": lambda: CyclotomicNumber.zeta(p), "one": lambda: 1,
            "zero": lambda: 0, "generic": lambda: 2}[kind]()


def zero_check(case):
    n, kind, p = case
    q = _q_for(kind, p)
    checks = 0
    for K in all_subsets(n):
        for I in all_subsets(n):
            actual = coeff_vnq(n, I, K, q) == 0
            predicted = zero_coeff_predicate(n, kind, I, K, p)
            checks += 1
            if actual != predicted:
                return checks, _counterexample(n, I, None, K, predicted, actual, q_kind=kind, p=p)
    return checks, None


# ---------------------------------------------------------------------------
# rank

RANK_PRIMES = (2, 3, 4, 5, 6)
RANK_RATIONALS = (2, 3, -2)


def rank_cases(n_cap: int, seed: int) -> list:
    out = []
    for n in range(1, n_cap + 1):
        out.extend((n, "root", p) for p in RANK_PRIMES)
        out.extend((n, "rational", q) for q in RANK_RATIONALS)
    return out


def rank_check(case):
    n, kind, x = case
    if kind == "root":
        got, expected = image_dimension(n, x), fibonacci_order(n, x)
    else:
        got, expected = action_rank(n, x), 2 ** (n - 1)
    if got != expected:
        return 1, _counterexample(n, None, None, None, expected, got, q_kind=kind, q=x)
    return 1, None


# ---------------------------------------------------------------------------
# relations

RELATION_ORDERS = (2, 3, 4, 5)


def relation_cases(n_cap: int, seed: int) -> list:
    return [(n, p) for n in range(1, n_cap + 1) for p in RELATION_ORDERS]


def relation_check(case):
    n, p = case
    rels = image_relations(n, p)
    expected = 2 ** (n - 1) - fibonacci_order(n, p)
    if len(rels) != expected:
        return 1, _counterexample(n, None, None, None, expected, len(rels), p=p)
    M = vnq_action_matrix(n, CyclotomicNumber.zeta(p))
    checks = 1
    for I in all_subsets(n):
        col = M.column(I)
        for rel in rels:
            checks += 1
            value = rel.evaluate(lambda s: col[s.mask])
            if value != 0:
                return checks, _counterexample(n, I, None, rel.K, 0, value, p=p, relation=rel.kind)
    rank = exact_rank(relation_matrix(n, rels))
    if rank != len(rels):
        return checks + 1, _counterexample(n, None, None, None, len(rels), rank, p=p)
    return checks + 1, None


# ---------------------------------------------------------------------------
# peak


def peak_check(n):
    checks = 0
    for I in all_subsets(n):
        peak = peak_expand(n, I)
        for K in all_subsets(n):
            checks += 1
            want = coeff_vnq(n, I, K, -1)
            if peak.coefficient(K) != want:
                return checks, _counterexample(n, I, None, K, want, peak.coefficient(K))
    return checks, None


# ---------------------------------------------------------------------------
# idempotence

IDEMPOTENCE_CLASS_CAP = 8     # V_n D_I and V_n B_I identities
MACKEY_CROSSCHECK_CAP = 5     # also redo them with generic Mackey multiplication


def idempotence_check(n):
    V = dynkin_sigma(n, 1)
    checks = 1
    square = left_multiply_dynkin(V, 1)
    if square != n * V:
        return checks, _counterexample(n, None, None, None, n * V, square, identity="V^2=nV")
    generic = n <= MACKEY_CROSSCHECK_CAP
    if generic and multiply_sigma(V, V) != square:
        return checks, _counterexample(n, None, None, None, square, multiply_sigma(V, V),
                                       identity="V^2 by Mackey")
    if n > IDEMPOTENCE_CLASS_CAP:
        return checks, None
    zero = SigmaElement.zero(n)
    for I in all_subsets(n):
        checks += 2
        B = SigmaElement.basis_element(n, I, "B")
        D = SigmaElement.basis_element(n, I, "D")
        vb = left_multiply_dynkin(B, 1)
        if I.mask and vb != zero:
            return checks, _counterexample(n, I, None, None, zero, vb, identity="V B_I = 0")
        vd = left_multiply_dynkin(D, 1)
        want = (-1) ** I.size * V
        if vd != want:
            return checks, _counterexample(n, I, None, None, want, vd, identity="V D_I")
        if generic:
            checks += 2
            if multiply_sigma(V, B) != vb or multiply_sigma(V, D) != vd:
                return checks, _counterexample(n, I, None, None, vd, multiply_sigma(V, D),
                                               identity="Mackey cross-check")
    return checks, None


# ---------------------------------------------------------------------------
# product-form


def product_form_check(n):
    a, b = dynkin_q_product_form(n, Q), dynkin_q(n, Q)
    if a != b:
        for w in sorted(set(a.support()) | set(b.support())):
            if a.coefficient(w) != b.coefficient(w):
                return 1, _counterexample(n, None, None, None, b.coefficient(w), a.coefficient(w),
                                          permutation=list(w))
    return 1, None


# ---------------------------------------------------------------------------

SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("mackey-oracle", 7, mackey_cases, mackey_check,
          "Mackey products against the group algebra (all pairs n <= 5, 200 sampled above)"),
    Suite("vnq-threeway", 7, threeway_cases, threeway_check,
          "closed formula = sum over D_[k-1] = group algebra, symbolic q"),
    Suite("involution", 8, involution_cases, involution_check,
          "split/merge involution and survivor matrices for every I inside K"),
    Suite("eigenvalues", 12, per_n_cases, eigen_check,
          "(1-q) times the diagonal equals the product of (1-q^v)"),
    Suite("zero-class", 7, zero_cases, zero_check,
          "combinatorial zero classification against specialized coefficients"),
    Suite("rank", 9, rank_cases, rank_check,
          "rank of the action at roots of unity and at non-root rationals"),
    Suite("relations", 9, relation_cases, relation_check,
          "linear relations cutting out the image at roots of unity"),
    Suite("peak", 12, per_n_cases, peak_check,
          "peak expansion against the q = -1 specialization"),
    Suite("idempotence", 10, per_n_cases, idempotence_check,
          "V^2 = nV, V D_I = (-1)^|I| V and V B_I = 0 at q = 1"),
    Suite("product-form", 8, per_n_cases, product_form_check,
          "cycle product form equals the sum over V-permutations"),
)}


class CapExceeded(ValueError):
    pass


def run_suite(name: str, n_cap: int | None = None, seed: int = 0, jobs: int = 1,
              unsafe_no_cap: bool = False) -> dict:
    """Run one suite and return its JSON-ready report."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    n_cap = suite.cap if n_cap is None else n_cap
    if n_cap < 1:
        raise ValueError(f"--n-cap must be >= 1, got {n_cap}")
    if n_cap > suite.cap and not unsafe_no_cap:
        raise CapExceeded(f"suite {name} is capped at n <= {suite.cap} (use --unsafe-no-cap)")
    cases = suite.cases(n_cap, seed)
    checked: dict[int, int] = {}
    failure = None

    def n_of(case):
        return case if isinstance(case, int) else case[0]

    def consume(results):
        nonlocal failure
        for case, (count, bad) in zip(cases, results):
            checked[n_of(case)] = checked.get(n_of(case), 0) + count
            if bad is not None:
                failure = bad
                return

    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            consume(pool.map(suite.check, cases, chunksize=max(1, len(cases) // (8 * jobs))))
    else:
        consume(map(suite.check, cases))
    return {
        "suite": name,
        "description": suite.summary,
        "n_cap": n_cap,
        "seed": seed,
        "cases": len(cases),
        "checks_by_n": {str(n): checked[n] for n in sorted(checked)},
        "status": "fail" if failure else "pass",
        "counterexample": failure,
    }
