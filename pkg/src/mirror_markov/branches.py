"""Fibonacci and Pell branches of the mirror tree.

``f_n`` runs along the all-L path (``f_n(1)`` is the odd Fibonacci number
``F_{2n+1}``), ``p_n`` along ``R`` followed by L steps (``p_n(1)`` is the odd
Pell number ``P_{2n+1}``).  Every sequence is produced twice, by the branch
mutation and by the three-term recurrence, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalInconsistency, NotConstant
from .gmscf import PolyCF, cf_eval
from .mirrortree import squared_of
from .polyring import ONE, Q3, LaurentPoly, exact_div, mirror, monomial, parse_poly
from .report import Report, failed, passed

__all__ = [
    "FIBONACCI",
    "PELL",
    "BranchSeq",
    "fib",
    "pell",
    "branch",
    "qmarkov_fib",
    "qmarkov_pell",
    "mirror_identities",
    "ratio_cf",
    "verify_ratio_cf",
]

FIBONACCI = "fibonacci"
PELL = "pell"

_F1 = parse_poly("1 + q")
_P1 = parse_poly("1 + 2q + 2q^2")
_M2 = squared_of(_F1)
_Q = monomial(1)


def _q(k: int) -> LaurentPoly:
    return monomial(k)


def _fib_by_mutation(n: int) -> list[LaurentPoly]:
    out = [ONE, _F1]
    for k in range(2, n + 1):
        prev = out[k - 1]
        num = (_Q + squared_of(prev)).shift(prev.degree)
        out.append(exact_div(num, mirror(out[k - 2])))
    return out[: n + 1]


def _fib_by_recurrence(n: int) -> list[LaurentPoly]:
    out = [ONE, _F1]
    for k in range(1, n):
        out.append(Q3 * mirror(out[k]) - out[k - 1].shift(3))
    return out[: n + 1]


def _pell_by_mutation(n: int) -> list[LaurentPoly]:
    out = [ONE, _P1]
    for k in range(2, n + 1):
        prev = out[k - 1]
        num = (_M2.shift(-1) + squared_of(prev)).shift(prev.degree)
        out.append(exact_div(num, mirror(out[k - 2])))
    return out[: n + 1]


def _pell_by_recurrence(n: int) -> list[LaurentPoly]:
    out = [ONE, _P1]
    for k in range(1, n):
        out.append(2 * Q3 * mirror(out[k]) - out[k - 1])
    return out[: n + 1]


@lru_cache(maxsize=None)
def _terms(kind: str, n: int) -> tuple[LaurentPoly, ...]:
    if kind == FIBONACCI:
        a, b, step = _fib_by_mutation(n), _fib_by_recurrence(n), 1
    elif kind == PELL:
        a, b, step = _pell_by_mutation(n), _pell_by_recurrence(n), 2
    else:
        raise ValueError(f"unknown branch {kind!r}")
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            raise InternalInconsistency(f"{kind} term {k}: mutation gives {x}, recurrence gives {y}")
        if x.degree != step * k:
            raise InternalInconsistency(f"{kind} term {k} has degree {x.degree}, expected {step * k}")
    return tuple(a)


@dataclass(frozen=True)
class BranchSeq:
    kind: str
    terms: tuple[LaurentPoly, ...]
    squared: tuple[LaurentPoly, ...]


def branch(kind: str, n: int) -> BranchSeq:
    """Terms ``0..n`` of a branch together with their squares."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms = _terms(kind, max(n, 1))[: n + 1]
    return BranchSeq(kind, terms, tuple(squared_of(p) for p in terms))


def fib(n: int) -> LaurentPoly:
    return branch(FIBONACCI, n).terms[n]


def pell(n: int) -> LaurentPoly:
    return branch(PELL, n).terms[n]


def _expect_q3(value: LaurentPoly, what: str) -> LaurentPoly:
    if value != Q3:
        raise NotConstant(f"{what} evaluates to {value}, not 1 + q + q^2")
    return value


def qmarkov_fib(n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("n must be at least 1")
    b = branch(FIBONACCI, n)
    F = b.squared
    num = _q(n) * F[0] + _q(n + 1) * F[n] + _q(n - 1) * F[n - 1]
    return _expect_q3(exact_div(num, b.terms[n] * b.terms[n - 1]), f"fibonacci n={n}")


def qmarkov_pell(n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("n must be at least 1")
    b = branch(PELL, n)
    P = b.squared
    num = _q(2 * n + 1) * _M2 + _q(2 * n) * P[n] + _q(2 * n + 2) * P[n - 1]
    return _expect_q3(exact_div(num, 2 * b.terms[n] * b.terms[n - 1]), f"pell n={n}")


def mirror_identities(n: int) -> Report:
    """The identities on mirrored terms, and the second recurrences, at index ``n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    fb = branch(FIBONACCI, n + 1)
    f, F = fb.terms, fb.squared
    ft = [mirror(p) for p in f]
    pb = branch(PELL, n + 1)
    p, P = pb.terms, pb.squared
    pt = [mirror(x) for x in p]
    checks = {
        "fib_tilde": Q3 * ft[n] * ft[n - 1]
        == _q(n + 1) * F[0] + _q(n) * F[n] + _q(n + 2) * F[n - 1],
        "fib_second_recurrence": ft[n + 1].shift(1) == Q3 * f[n] - ft[n - 1],
        "pell_tilde": 2 * Q3 * pt[n] * pt[n - 1]
        == _q(2 * n - 1) * _M2 + _q(2 * n) * P[n] + _q(2 * n - 2) * P[n - 1],
        "pell_second_recurrence": pt[n + 1] == 2 * Q3 * p[n] - pt[n - 1].shift(4),
    }
    bad = [k for k, v in checks.items() if not v]
    if bad:
        return failed("mirror-identities", n, {"n": n, "identities": bad})
    return passed("mirror-identities", n, checked=len(checks))


# periodic middle part of the Fibonacci ratio expansion
_FIB_CYCLE = (monomial(-2), _Q, ONE, _Q)
_ONE_PLUS_Q_SQ = _F1 * _F1


def ratio_cf(kind: str, n: int) -> PolyCF:
    """Closed-form continued fraction of ``f_{n+1}/mirror(f_n)`` or ``p_{n+1}/mirror(p_n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == FIBONACCI:
        middle = [_FIB_CYCLE[i % 4] for i in range(2 * n - 2)]
        last = _F1.shift(-2 if n % 2 else -1)
        return PolyCF((_F1, *middle, last))
    if kind == PELL:
        entries = [_P1]
        for i in range(n):
            entries += [ONE if i % 2 == 0 else monomial(-2), _ONE_PLUS_Q_SQ]
        return PolyCF(tuple(entries))
    raise ValueError(f"unknown branch {kind!r}")


def verify_ratio_cf(kind: str, n: int) -> bool:
    """Cross-multiply the evaluated fraction against the actual term ratio."""
    terms = branch(kind, n + 1).terms
    num, den = cf_eval(ratio_cf(kind, n))
    return num * mirror(terms[n]) == den * terms[n + 1]
