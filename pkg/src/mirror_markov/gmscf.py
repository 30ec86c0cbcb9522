"""Continued fractions over the Farey tree whose numerators are squared Markov numbers.

Entries are built as polynomials in ``w = q + 1/q`` (they are always affine in
``w``) and converted to Laurent form for evaluation.  ``[a_1, ..., a_n]``
denotes ``a_1 + 1/(a_2 + 1/(... + 1/a_n))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OutOfRange
from .farey import farey_triple_for, format_rational, rational_to_tree_path
from .polyring import ONE, ZERO, LaurentPoly, SPoly, evaluate, is_positive
from .report import Report, failed, passed

__all__ = [
    "PolyCF",
    "cf_eval",
    "convergents",
    "gms_cf",
    "gms_cf_s",
    "polynomial_numerator",
    "numerator_matches_M",
    "positivity_certificate",
]


@dataclass(frozen=True)
class PolyCF:
    entries: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a continued fraction needs at least one entry")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "[" + ", ".join(str(e) for e in self.entries) + "]"


def convergents(cf: PolyCF) -> list[tuple[LaurentPoly, LaurentPoly]]:
    """All prefix convergents ``(p_i, q_i)`` via ``p_i = a_i p_{i-1} + p_{i-2}``."""
    p_prev, p = ONE, cf.entries[0]
    q_prev, q = ZERO, ONE
    out = [(p, q)]
    for a in cf.entries[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return out


def cf_eval(cf: PolyCF) -> tuple[LaurentPoly, LaurentPoly]:
    return convergents(cf)[-1]


_W = SPoly((0, 1))
_FIRST = SPoly((2, 2))   # 2w + 2
_LAST = SPoly((2, 1))    # w + 2
_MIDDLE = SPoly((2, 3))  # 3w + 2


@lru_cache(maxsize=None)
def gms_cf_s(t: Fraction) -> tuple[SPoly, ...]:
    """Entries of the continued fraction for ``t`` as polynomials in ``w``."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise OutOfRange(f"{t} is not in (0, 1)")
    if t == Fraction(1, 2):
        return (_FIRST, _LAST)
    ft = farey_triple_for(t)
    r, s = ft.r, ft.s
    if r == 0:
        b = gms_cf_s(s)
        return (_FIRST, SPoly((1,)), b[-1] - 1, *reversed(b[:-1]))
    a = gms_cf_s(r)
    if s == 1:
        return (*reversed(a), _MIDDLE, _LAST)
    b = gms_cf_s(s)
    return (*reversed(a), _MIDDLE, SPoly((1,)), b[-1] - 1, *reversed(b[:-1]))


def gms_cf(t: Fraction) -> PolyCF:
    return PolyCF(tuple(e.to_laurent() for e in gms_cf_s(Fraction(t))))


def polynomial_numerator(t: Fraction) -> LaurentPoly:
    """Numerator of the fraction for ``t``, shifted to start at ``q^0``."""
    num, _ = cf_eval(gms_cf(t))
    return num.shift(-num.min_exp)


def numerator_matches_M(t: Fraction, M_t: LaurentPoly | None = None) -> bool:
    """Check ``numerator = q^D M_t`` in polynomial form, ``D`` half the numerator degree.

    ``M_t`` defaults to the squared-tree maximum at the tree path of ``t``.
    """
    if M_t is None:
        from .squaredtree import node_at

        M_t = node_at(rational_to_tree_path(Fraction(t))).maximum
    poly = polynomial_numerator(t)
    if poly.degree % 2:
        return False
    return poly == M_t.shift(poly.degree // 2)


def positivity_certificate(t: Fraction) -> Report:
    """Check the hypotheses of the positivity argument for one rational.

    Every entry must have nonnegative coefficients and the outer entries a
    constant term of at least 2; the numerator is then a sum of products of
    entries, hence positive, which is confirmed directly.
    """
    t = Fraction(t)
    cf = gms_cf(t)
    label = format_rational(t)
    for i, e in enumerate(cf.entries):
        if any(c < 0 for c in e.coeffs):
            return failed("cf-positivity", label, {"t": label, "entry": i, "value": str(e)})
    for i in (0, len(cf) - 1):
        if cf.entries[i].coeff(0) < 2:
            return failed("cf-positivity", label, {"t": label, "entry": i, "value": str(cf.entries[i])})
    num, den = cf_eval(cf)
    if not is_positive(num):
        return failed("cf-positivity", label, {"t": label, "numerator": str(num)})
    return passed("cf-positivity", label, length=len(cf), value_at_1=evaluate(num, 1))
