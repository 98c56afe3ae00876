"""
JSON and CSV encodings of scalars, subsets, group algebra elements,
descent algebra elements and action matrices.

Scalars in JSON:

* rational: the string ``"a/b"`` (``"a"`` when b = 1);
* Laurent polynomial: sorted list of ``[exponent, "rational"]`` pairs;
* cyclotomic number: ``{"p": p, "coeffs": ["rational", ...]}``.

In CSV every scalar is a single string: rationals as above, Laurent
polynomials as ``q^0:1,q^1:-2,q^3:1``, cyclotomic numbers as
``z4^0:2,z4^1:-2``; any zero is ``0``.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .compositions import Subset, all_subsets
from .dynkin import LeftActionMatrix
from .scalars import CyclotomicNumber, LaurentPoly, _norm, is_rational
from .sigma import SigmaElement
from .symmetric import GroupAlgebraElement


def rational_to_str(x) -> str:
    return str(Fraction(x))


def scalar_to_json(x):
    if isinstance(x, LaurentPoly):
        return [[e, rational_to_str(c)] for e, c in x.items()]
    if isinstance(x, CyclotomicNumber):
        return {"p": x.p, "coeffs": [rational_to_str(c) for c in x.coeffs]}
    if is_rational(x):
        return rational_to_str(x)
    raise TypeError(f"cannot serialize scalar of type {type(x).__name__}")


def scalar_from_json(obj):
    if isinstance(obj, str):
        return _norm(Fraction(obj))
    if isinstance(obj, list):
        return LaurentPoly({int(e): Fraction(c) for e, c in obj})
    if isinstance(obj, dict):
        return CyclotomicNumber(int(obj["p"]), [Fraction(c) for c in obj["coeffs"]])
    raise ValueError(f"not a serialized scalar: {obj!r}")


def scalar_to_csv(x) -> str:
    if x == 0:
        return "0"
    if isinstance(x, LaurentPoly):
        return ",".join(f"q^{e}:{rational_to_str(c)}" for e, c in x.items())
    if isinstance(x, CyclotomicNumber):
        return ",".join(f"z{x.p}^{i}:{rational_to_str(c)}" for i, c in enumerate(x.coeffs) if c)
    if is_rational(x):
        return rational_to_str(x)
    raise TypeError(f"cannot serialize scalar of type {type(x).__name__}")


def subset_to_json(s: Subset) -> dict:
    return {"n": s.n, "set": list(s.members)}


def subset_from_json(obj) -> Subset:
    return Subset.from_members(int(obj["n"]), obj["set"])


def sigma_to_json(f: SigmaElement) -> dict:
    return {
        "n": f.n,
        "basis": f.basis,
        "terms": [{"set": list(k.members), "coeff": scalar_to_json(c)} for k, c in f.items()],
    }


def sigma_from_json(obj) -> SigmaElement:
    n = int(obj["n"])
    coeffs = {Subset.from_members(n, t["set"]): scalar_from_json(t["coeff"]) for t in obj["terms"]}
    return SigmaElement(n, coeffs, obj["basis"])


def group_element_to_json(f: GroupAlgebraElement) -> dict:
    return {
        "n": f.n,
        "terms": [{"perm": list(w), "coeff": scalar_to_json(c)} for w, c in sorted(f.items())],
    }


def group_element_from_json(obj) -> GroupAlgebraElement:
    return GroupAlgebraElement(int(obj["n"]), {tuple(t["perm"]): scalar_from_json(t["coeff"])
                                               for t in obj["terms"]})


def action_matrix_to_json(M: LeftActionMatrix) -> dict:
    return {
        "n": M.n,
        "index": [list(s.members) for s in all_subsets(M.n)],
        "rows": [[scalar_to_json(x) for x in row] for row in M.entries],
    }


def action_matrix_from_json(obj) -> tuple[int, list[list]]:
    return int(obj["n"]), [[scalar_from_json(x) for x in row] for row in obj["rows"]]


def action_matrix_to_csv(M: LeftActionMatrix) -> str:
    """One line per nonzero entry: row K index, column I index, value (bitmask indices)."""
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["K", "I", "value"])
    for k, row in enumerate(M.entries):
        for i, x in enumerate(row):
            if x != 0:
                w.writerow([k, i, scalar_to_csv(x)])
    return buf.getvalue()


def sigma_to_csv(f: SigmaElement) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["set", "coeff"])
    for k, c in f.items():
        w.writerow([" ".join(map(str, k.members)), scalar_to_csv(c)])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
