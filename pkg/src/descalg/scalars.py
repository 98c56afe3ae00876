"""
Exact scalars: rationals, Laurent polynomials in ``q`` and cyclotomic numbers.

Rationals are :class:`fractions.Fraction`.  Coefficients that happen to be
integral are stored as plain ``int`` so that the common integer case stays
fast; ``int`` and ``Fraction`` compare and hash consistently, so this is
invisible to callers.

Every algebraic routine in the package only relies on ``+``, ``-``, ``*``,
``**`` (non-negative exponents), ``== 0`` and, for fields, ``/``.  Plain
``int``, ``Fraction``, :class:`LaurentPoly` and :class:`CyclotomicNumber`
all satisfy this.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence


def _norm(c):
    """Return ``c`` as an ``int`` when integral, else as a ``Fraction``."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _is_rational(x) -> bool:
    return isinstance(x, _RationalABC) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, lists of coefficients, low degree first

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [_norm(x) for x in a]
    _trim(rem)
    lead = b[-1]
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        c = _norm(Fraction(c) / lead) if lead != 1 else c
        quo[i - db] = c
        for j, y in enumerate(b):
            rem[i - db + j] -= c * y
    rem = [_norm(x) for x in rem[:db]]
    return _trim(quo), _trim(rem)


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """
    The cyclotomic polynomial Phi_m as integer coefficients, lowest degree first.

    Built recursively from x^m - 1 = prod_{d | m} Phi_d(x).

    >>> cyclotomic_polynomial(1), cyclotomic_polynomial(2), cyclotomic_polynomial(6)
    ((-1, 1), (1, 1), (1, -1, 1))
    """
    if m < 1:
        raise ValueError(f"cyclotomic_polynomial needs m >= 1, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


# ---------------------------------------------------------------------------


class LaurentPoly:
    """
    Laurent polynomial in one variable ``q`` with rational coefficients.

    Immutable; zero coefficients are never stored, so equality is term-wise.

    >>> q = LaurentPoly.q()
    >>> (1 + q) * (1 - q)
    LaurentPoly('1-q^2')
    >>> q ** -1 * q
    LaurentPoly('1')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        clean: dict[int, object] = {}
        for e, c in terms:
            if c == 0:
                continue
            e = int(e)
            clean[e] = _norm(clean.get(e, 0) + c)
            if clean[e] == 0:
                del clean[e]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # terms already clean and normalized; sorting is cheap and keeps order canonical
        obj = object.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._raw({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, object]:
        """Exponent -> coefficient, sorted by exponent (a copy)."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int | None:
        return next(iter(self._terms), None)

    def degree(self) -> int | None:
        return next(reversed(self._terms), None) if self._terms else None

    def is_polynomial(self) -> bool:
        return not self._terms or next(iter(self._terms)) >= 0

    def coefficient(self, e: int):
        return self._terms.get(e, 0)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_rational(other):
            return LaurentPoly._raw({0: _norm(other)} if other != 0 else {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v if isinstance(v, int) else _norm(v)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_rational(other):
            if other == 0:
                return LaurentPoly._raw({})
            other = _norm(other)
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: _norm(c) for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ArithmeticError("only monomials are invertible Laurent polynomials")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw({e * k: _norm(Fraction(1) / Fraction(c) ** -k)})
        result = LaurentPoly._raw({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other) -> "LaurentPoly":
        """
        Divide by ``other``, raising ``ArithmeticError`` unless the quotient
        is again a Laurent polynomial.
        """
        other = self._coerce(other)
        if other is None:
            raise TypeError(f"cannot divide LaurentPoly by {type(other).__name__}")
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        va, vb = self.valuation(), other.valuation()
        a = [0] * (self.degree() - va + 1)
        for e, c in self._terms.items():
            a[e - va] = c
        b = [0] * (other.degree() - vb + 1)
        for e, c in other._terms.items():
            b[e - vb] = c
        quo, rem = _poly_divmod(a, b)
        if rem:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LaurentPoly({i + va - vb: c for i, c in enumerate(quo)})

    def __truediv__(self, other):
        if _is_rational(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return self * inv
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return NotImplemented

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and 0 in self._terms:
                self._hash = hash(self._terms[0])
            else:
                self._hash = hash(("LaurentPoly", tuple(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x):
        """Substitute ``q = x`` for any scalar ``x`` supporting the ring operations."""
        if _is_rational(x):
            x = Fraction(x)
            return _norm(sum((x ** e * c for e, c in self._terms.items()), Fraction(0)))
        total = x * 0
        for e, c in self._terms.items():
            total = total + (x ** e) * c
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                if mag == 1:
                    body = var
                elif isinstance(mag, int):
                    body = f"{mag}{var}"
                else:
                    body = f"({mag}){var}"
            out.append(("-" if sign == "-" else "") + body if not out else sign + body)
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly('{self}')"


Q = LaurentPoly.q()


class CyclotomicMismatchError(ValueError):
    """Raised when cyclotomic numbers of different orders are combined."""


class CyclotomicNumber:
    """
    Element of Q(zeta_p) = Q[x]/Phi_p(x), stored as a residue of degree < deg Phi_p.

    >>> z = CyclotomicNumber.zeta(4)
    >>> z * z
    CyclotomicNumber(4, (-1, 0))
    >>> (1 - z) * (1 - z * z)
    CyclotomicNumber(4, (2, -2))
    """

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs: Sequence = ()):
        if p < 1:
            raise ValueError(f"order p must be >= 1, got {p}")
        phi = cyclotomic_polynomial(p)
        deg = len(phi) - 1
        coeffs = [_norm(c) for c in coeffs]
        if len(coeffs) > deg:
            _, coeffs = _poly_divmod(coeffs, phi)
        coeffs = list(coeffs) + [0] * (deg - len(coeffs))
        self.p = p
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def zeta(cls, p: int) -> "CyclotomicNumber":
        return cls(p, (0, 1))

    @classmethod
    def from_rational(cls, p: int, r) -> "CyclotomicNumber":
        return cls(p, (r,))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise CyclotomicMismatchError(
                    f"cannot combine elements of Q(zeta_{self.p}) and Q(zeta_{other.p})")
            return other
        if _is_rational(other):
            return CyclotomicNumber(self.p, (other,))
        return None

    def _new(self, coeffs) -> "CyclotomicNumber":
        obj = object.__new__(CyclotomicNumber)
        obj.p = self.p
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(_norm(a + b) for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._new(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(_norm(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_rational(other):
            other = _norm(other)
            return self._new(_norm(a * other) for a in self.coeffs)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = _poly_mul(self.coeffs, other.coeffs)
        phi = cyclotomic_polynomial(self.p)
        deg = len(phi) - 1
        # Phi_p is monic: reduce from the top degree down
        for i in range(len(prod) - 1, deg - 1, -1):
            c = prod[i]
            if c:
                for j in range(deg):
                    prod[i - deg + j] -= c * phi[j]
        prod = prod[:deg] + [0] * (deg - len(prod))
        return self._new(_norm(c) for c in prod)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in a cyclotomic field")
        # invariant: r_i = s_i * self (mod Phi_p)
        r0, r1 = list(cyclotomic_polynomial(self.p)), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        inv_c = Fraction(1) / Fraction(r1[0])
        return CyclotomicNumber(self.p, [c * inv_c for c in s1])

    def __truediv__(self, other):
        if _is_rational(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = self._new([1] + [0] * (self.degree - 1))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if _is_rational(other):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise CyclotomicMismatchError(
                    f"cannot compare elements of Q(zeta_{self.p}) and Q(zeta_{other.p})")
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(("Cyclotomic", self.p, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z{self.p}^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"CyclotomicNumber({self.p}, {tuple(str(c) if isinstance(c, Fraction) else c for c in self.coeffs)})"


def q_integer(v: int, r):
    """
    The r-integer [v]_r = r^0 + r^1 + ... + r^(v-1), in the ring of ``r``.

    >>> q_integer(3, 2)
    7
    >>> q_integer(2, Q ** -1)
    LaurentPoly('q^-1+1')
    """
    if v < 0:
        raise ValueError(f"q_integer needs v >= 0, got {v}")
    total = r * 0
    power = r ** 0
    for _ in range(v):
        total = total + power
        power = power * r
    return total


def specialize_at_root(f: LaurentPoly, p: int) -> CyclotomicNumber:
    """
    Image of ``f`` under q -> zeta_p.  Exponents are first reduced mod p
    (zeta_p^-1 = zeta_p^(p-1)), then the result is reduced mod Phi_p.
    """
    if p < 1:
        raise ValueError(f"root of unity order must be >= 1, got {p}")
    if _is_rational(f):
        return CyclotomicNumber(p, (f,))
    vec = [0] * p
    for e, c in f.items():
        vec[e % p] += c
    return CyclotomicNumber(p, vec)


def evaluate_at(f: LaurentPoly, q):
    """
    Evaluate a Laurent polynomial at a scalar value of ``q``.

    ``q`` may be ``None`` or the generator :data:`Q` (symbolic: ``f`` is
    returned unchanged), a cyclotomic number, or a rational.
    """
    if q is None or (isinstance(q, LaurentPoly) and q == Q):
        return f
    if isinstance(q, CyclotomicNumber) and q == CyclotomicNumber.zeta(q.p):
        return specialize_at_root(f, q.p)
    return f.evaluate(q)


def is_rational(x) -> bool:
    """True for ``int`` and ``Fraction`` (booleans excluded)."""
    return _is_rational(x)


def is_field_scalar(x) -> bool:
    return _is_rational(x) or isinstance(x, CyclotomicNumber)
