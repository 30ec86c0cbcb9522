"""Exact integer Laurent polynomials in one variable ``q``.

Coefficients are Python ints, stored densely from the lowest exponent up.
Large products go through Kronecker substitution so that the bulk of the
work happens inside one big-integer multiply (GMP when gmpy2 is present).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NegativeExponent, NotDivisible, NotSymmetric, ZeroPoint

try:  # GMP gives subquadratic bigint multiply/divide for the packed integers
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

__all__ = [
    "LaurentPoly",
    "SPoly",
    "DualNumber",
    "Gaussian",
    "ZERO",
    "ONE",
    "Q",
    "S",
    "Q3",
    "monomial",
    "parse_poly",
    "exact_div",
    "mirror",
    "involute",
    "is_symmetric",
    "to_s_basis",
    "evaluate",
    "eval_dual",
    "inflate",
    "is_positive",
    "to_json",
    "from_json",
]

# below this many coefficients in the shorter factor, schoolbook wins
_KRONECKER_MIN = 12


def _trim(min_exp: int, coeffs: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return min_exp + lo, tuple(coeffs[lo:hi])


@dataclass(frozen=True, slots=True)
class LaurentPoly:
    """``sum(coeffs[i] * q**(min_exp + i))``, always in canonical form."""

    min_exp: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        m, c = _trim(int(self.min_exp), coeffs)
        object.__setattr__(self, "min_exp", m)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], min_exp: int = 0) -> "LaurentPoly":
        return cls(min_exp, tuple(coeffs))

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls(0, (c,))

    # ---- basic queries -------------------------------------------------

    @property
    def degree(self) -> int | None:
        """Top exponent, or ``None`` for the zero polynomial."""
        if not self.coeffs:
            return None
        return self.min_exp + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, e: int) -> int:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> Iterable[tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + i, c

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    # ---- ring operations -----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.degree, other.degree)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs, self.min_exp - lo):
            out[i] += c
        for i, c in enumerate(other.coeffs, other.min_exp - lo):
            out[i] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.min_exp, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly(self.min_exp, tuple(c * other for c in self.coeffs))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        return LaurentPoly(self.min_exp + other.min_exp, _mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.min_exp + k, self.coeffs)

    # ---- display -------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(0, (x,))
    return NotImplemented


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], nbytes: int):
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    z = _big.from_bytes(pos, "little")
    if any(c < 0 for c in coeffs):
        neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
        z -= _big.from_bytes(neg, "little")
    return z


def _unpack(z, count: int, nbytes: int) -> list[int]:
    # balanced digits: every true coefficient satisfies |c| < 2**(8*nbytes - 1)
    negative = z < 0
    if negative:
        z = -z
    raw = z.to_bytes((count + 1) * nbytes, "little")
    full = 1 << (8 * nbytes)
    half = full >> 1
    out = []
    carry = 0
    for i in range(count):
        v = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out.append(v)
    if negative:
        out = [-v for v in out]
    return out


def _mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _schoolbook(a, b)
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    z = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(z, len(a) + len(b) - 1, nbytes)


ZERO = LaurentPoly()
ONE = LaurentPoly(0, (1,))
Q = LaurentPoly(1, (1,))
#: ``s = q + 1/q``
S = LaurentPoly(-1, (1, 0, 1))
#: the q-integer ``[3]_q = 1 + q + q^2``
Q3 = LaurentPoly(0, (1, 1, 1))


def monomial(k: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly(k, (c,))


# ---- text format --------------------------------------------------------

def format_poly(p: LaurentPoly, var: str = "q") -> str:
    """Lowest degree first, e.g. ``1 + 2 q + 2 q^2``."""
    if not p.coeffs:
        return "0"
    parts = []
    for e, c in p.terms():
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)} {mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(q(?:\^\(?(-?\d+)\)?)?)?")


def parse_poly(text: str) -> LaurentPoly:
    """Parse strings such as ``"2q^-2 + 6q^-1 + 9 + 6q + 2q^2"``."""
    src = text.replace(" ", "")
    if src in ("", "0"):
        return ZERO
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial term at {src[pos:]!r}")
        sign, digits, qpart, exp = m.groups()
        if not digits and not qpart:
            raise ValueError(f"cannot parse polynomial term at {src[pos:]!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0
        if qpart:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
    return LaurentPoly.from_dict(terms)


# ---- division -----------------------------------------------------------

def _long_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    rem = list(num.coeffs)
    d = den.coeffs
    lead = d[-1]
    qlen = len(rem) - len(d) + 1
    if qlen <= 0:
        raise NotDivisible(num, den)
    quot = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        top = rem[k + len(d) - 1]
        if top:
            c, r = divmod(top, lead)
            if r:
                raise NotDivisible(num, den, "quotient would have non-integer coefficients")
            quot[k] = c
            for j, dj in enumerate(d):
                rem[k + j] -= c * dj
    if any(rem):
        raise NotDivisible(num, den)
    return LaurentPoly(num.min_exp - den.min_exp, quot)


def _kronecker_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Fast path -- returns ``None`` whenever it cannot certify the quotient."""
    qlen = len(num.coeffs) - len(den.coeffs) + 1
    if qlen <= 0:
        return None
    bits = max(abs(c) for c in num.coeffs + den.coeffs).bit_length() + 16
    nbytes = (bits + 7) // 8
    zn = _pack(num.coeffs, nbytes)
    zd = _pack(den.coeffs, nbytes)
    zq, zr = divmod(zn, zd)
    if zr or abs(zq).bit_length() > 8 * nbytes * qlen:
        return None
    cand = LaurentPoly(num.min_exp - den.min_exp, _unpack(zq, qlen, nbytes))
    if cand * den != num:
        return None
    return cand


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``t`` with ``t * den == num``; raise :class:`NotDivisible` otherwise."""
    if not den.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num.coeffs:
        return ZERO
    if len(den.coeffs) == 1:
        c = den.coeffs[0]
        if any(x % c for x in num.coeffs):
            raise NotDivisible(num, den)
        return LaurentPoly(num.min_exp - den.min_exp, tuple(x // c for x in num.coeffs))
    if len(den.coeffs) >= _KRONECKER_MIN:
        fast = _kronecker_div(num, den)
        if fast is not None:
            return fast
    return _long_div(num, den)


# ---- involutions --------------------------------------------------------

def involute(p: LaurentPoly) -> LaurentPoly:
    """Substitute ``q -> 1/q``."""
    if not p.coeffs:
        return p
    return LaurentPoly(-p.degree, p.coeffs[::-1])


def mirror(p: LaurentPoly) -> LaurentPoly:
    """Reverse the coefficient list of a polynomial: ``q**deg(p) * p(1/q)``."""
    if p.coeffs and p.min_exp < 0:
        raise NegativeExponent(f"mirror needs a polynomial, got min_exp={p.min_exp}")
    return LaurentPoly(0, p.coeffs[::-1])


def is_symmetric(p: LaurentPoly) -> bool:
    return p == involute(p)


def inflate(p: LaurentPoly, k: int) -> LaurentPoly:
    """Substitute ``q -> q**k``."""
    if k < 1:
        raise ValueError("inflate needs a positive factor")
    if k == 1 or not p.coeffs:
        return p
    out = [0] * ((len(p.coeffs) - 1) * k + 1)
    for i, c in enumerate(p.coeffs):
        out[i * k] = c
    return LaurentPoly(p.min_exp * k, out)


def is_positive(p: LaurentPoly) -> bool:
    """Every coefficient on the contiguous support is strictly positive."""
    return bool(p.coeffs) and all(c > 0 for c in p.coeffs)


# ---- symmetric basis ----------------------------------------------------

@dataclass(frozen=True, slots=True)
class SPoly:
    """Polynomial in ``s = q + 1/q``; ``coeffs[k]`` multiplies ``s**k``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def to_laurent(self) -> LaurentPoly:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * S + c
        return acc

    def __call__(self, x):
        """Horner evaluation in any ring that accepts ``+ int`` and ``*``."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "SPoly | int") -> "SPoly":
        if isinstance(other, int):
            other = SPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return SPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other: "SPoly | int") -> "SPoly":
        if isinstance(other, int):
            other = SPoly((other,))
        return self + SPoly(tuple(-c for c in other.coeffs))

    def __str__(self) -> str:
        return format_poly(LaurentPoly(0, self.coeffs), var="s")


def to_s_basis(p: LaurentPoly) -> SPoly:
    """Rewrite a symmetric Laurent polynomial as a polynomial in ``s``."""
    if not is_symmetric(p):
        raise NotSymmetric(f"{p} is not invariant under q -> 1/q")
    if not p.coeffs:
        return SPoly()
    n = p.degree
    # V_k(s) = q^k + q^-k, with V_k = s V_{k-1} - V_{k-2}
    acc = [p.coeff(0)] + [0] * n
    v_prev, v_cur = [2], [0, 1]
    for k in range(1, n + 1):
        c = p.coeff(k)
        if c:
            for i, x in enumerate(v_cur):
                acc[i] += c * x
        nxt = [0] + v_cur
        for i, x in enumerate(v_prev):
            nxt[i] -= x
        v_prev, v_cur = v_cur, nxt
    return SPoly(tuple(acc))


# ---- scalar rings for evaluation ----------------------------------------

@dataclass(frozen=True, slots=True)
class DualNumber:
    """``real + eps * ε`` with ``ε**2 == 0``."""

    real: int = 0
    eps: int = 0

    def _wrap(self, other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return DualNumber(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.real + o.real, self.eps + o.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.real, -self.eps)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.real - o.real, self.eps - o.eps)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.real * o.real, self.real * o.eps + self.eps * o.real)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        # (a + bε)^n = a^n + n a^(n-1) b ε
        if n == 0:
            return DualNumber(1, 0)
        return DualNumber(self.real**n, n * self.real ** (n - 1) * self.eps)

    def __str__(self) -> str:
        if self.eps == 0:
            return str(self.real)
        sign = "+" if self.eps > 0 else "-"
        mag = "" if abs(self.eps) == 1 else str(abs(self.eps))
        return f"{self.real} {sign} {mag}ε"


Exact = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class Gaussian:
    """Exact complex number ``re + im*i`` with integer or rational parts."""

    re: Exact = 0
    im: Exact = 0

    def __post_init__(self):
        for name in ("re", "im"):
            v = getattr(self, name)
            if isinstance(v, Fraction) and v.denominator == 1:
                object.__setattr__(self, name, int(v))

    def _wrap(self, other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re - o.re, self.im - o.im)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Exact:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Gaussian":
        n = self.norm()
        if n == 0:
            raise ZeroPoint("inverse of 0")
        return Gaussian(Fraction(self.re) / n, Fraction(-self.im) / n)

    def __pow__(self, n: int) -> "Gaussian":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Gaussian(1, 0)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re} {'+' if self.im >= 0 else '-'} {abs(self.im)}i"


I = Gaussian(0, 1)


def _horner(coeffs: Sequence[int], x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def evaluate(p: LaurentPoly, x):
    """Evaluate ``p`` at ``x``.

    Exact for ``int``, ``Fraction`` and :class:`Gaussian` points (the result of
    an integer point with negative exponents is a ``Fraction`` unless it is
    integral).  A :class:`DualNumber` point is read as a value of
    ``s = q + 1/q`` and requires ``p`` symmetric.  ``float``/``complex`` points
    give approximate answers.
    """
    if isinstance(x, DualNumber):
        return eval_dual(p, x)
    if isinstance(x, bool):
        x = int(x)
    if not p.coeffs:
        return 0 * x
    if isinstance(x, (int, Fraction)):
        if x == 0 and p.min_exp < 0:
            raise ZeroPoint("negative exponent evaluated at 0")
        body = _horner(p.coeffs, x)
        if p.min_exp >= 0:
            return body * x**p.min_exp
        val = Fraction(body) / Fraction(x) ** (-p.min_exp)
        return int(val) if val.denominator == 1 else val
    if isinstance(x, Gaussian):
        if x.norm() == 0 and p.min_exp < 0:
            raise ZeroPoint("negative exponent evaluated at 0")
        return _horner(p.coeffs, x) * x**p.min_exp
    if isinstance(x, (float, complex)):
        if x == 0 and p.min_exp < 0:
            raise ZeroPoint("negative exponent evaluated at 0")
        return sum(c * x**e for e, c in p.terms())
    raise TypeError(f"cannot evaluate at {type(x).__name__}")


def eval_dual(p: LaurentPoly, s_value: DualNumber) -> DualNumber:
    """Substitute ``s = q + 1/q -> s_value`` in a symmetric ``p``."""
    return to_s_basis(p)(s_value)


# ---- serialisation ------------------------------------------------------

def to_json(p: LaurentPoly) -> dict:
    return {"min_exp": p.min_exp, "coeffs": [str(c) for c in p.coeffs]}


def from_json(obj: dict) -> LaurentPoly:
    return LaurentPoly(int(obj["min_exp"]), tuple(int(c) for c in obj["coeffs"]))

