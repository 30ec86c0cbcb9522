"""Farey-tree addressing of rationals in (0, 1).

Two kinds of {L,R} words appear in this package:

* Farey paths, handled by :func:`path_to_rational` / :func:`rational_to_path`:
  from a Farey triple ``(r, s, t)`` the letter L moves to ``(r, t, r+t)`` and
  R to ``(t, s, t+s)`` (``+`` being the mediant).
* Tree paths, used by the squared and mirror trees: L mutates the middle
  entry of the value-sorted triple (the left edge), R mutates the
  smallest entry (right edge).

The two agree exactly while the smallest entry of the triple is the Markov
number of ``r``; that holds at the root and after every Farey L step, and
fails after every Farey R step.  :func:`tree_path_to_farey_path` and its
inverse translate between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotUnimodular, OutOfRange

__all__ = [
    "FareyTriple",
    "parse_rational",
    "format_rational",
    "farey_sum",
    "path_to_rational",
    "rational_to_path",
    "farey_triple_for",
    "tree_path_to_farey_path",
    "farey_path_to_tree_path",
    "rational_to_tree_path",
    "tree_path_to_rational",
    "check_path",
]

ZERO = Fraction(0, 1)
ONE = Fraction(1, 1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FareyTriple:
    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        if not (self.r < self.t < self.s):
            raise ValueError(f"expected r < t < s, got {self}")
        if _wedge(self.r, self.s) != 1 or self.t != mediant(self.r, self.s):
            raise NotUnimodular(f"{self} is not a Farey triple")

    def __str__(self) -> str:
        return f"({format_rational(self.r)}, {format_rational(self.s)}, {format_rational(self.t)})"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    if not sep:
        raise ValueError(f"expected 'num/den', got {text!r}")
    return Fraction(int(num), int(den))


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _wedge(r: Fraction, s: Fraction) -> int:
    return abs(r.numerator * s.denominator - r.denominator * s.numerator)


def mediant(r: Fraction, s: Fraction) -> Fraction:
    return Fraction(r.numerator + s.numerator, r.denominator + s.denominator)


def farey_sum(r: Fraction, s: Fraction) -> Fraction:
    """Mediant of a unimodular pair ``r < s``."""
    if _wedge(r, s) != 1:
        raise NotUnimodular(f"{format_rational(r)} and {format_rational(s)} are not Farey neighbours")
    if not r < s:
        r, s = s, r
    return mediant(r, s)


def check_path(path: str) -> str:
    if any(ch not in "LR" for ch in path):
        raise ValueError(f"path must be a word over L/R, got {path!r}")
    return path


def _descend(path: str) -> FareyTriple:
    r, s = ZERO, ONE
    t = HALF
    for step in check_path(path):
        if step == "L":
            s = t
        else:
            r = t
        t = mediant(r, s)
    return FareyTriple(r, s, t)


def path_to_rational(path: str) -> Fraction:
    return _descend(path).t


def rational_to_path(t: Fraction) -> str:
    t = Fraction(t)
    if not ZERO < t < ONE:
        raise OutOfRange(f"{t} is not in (0, 1)")
    r, s = ZERO, ONE
    steps = []
    m = HALF
    while m != t:
        if t < m:
            steps.append("L")
            s = m
        else:
            steps.append("R")
            r = m
        m = mediant(r, s)
    return "".join(steps)


def farey_triple_for(t: Fraction) -> FareyTriple:
    return _descend(rational_to_path(t))


def _flip(step: str) -> str:
    return "R" if step == "L" else "L"


def tree_path_to_farey_path(path: str) -> str:
    # aligned: the smallest entry of the current triple is m_r
    aligned = True
    out = []
    for step in check_path(path):
        farey_step = step if aligned else _flip(step)
        out.append(farey_step)
        aligned = farey_step == "L"
    return "".join(out)


def farey_path_to_tree_path(path: str) -> str:
    aligned = True
    out = []
    for farey_step in check_path(path):
        out.append(farey_step if aligned else _flip(farey_step))
        aligned = farey_step == "L"
    return "".join(out)


def tree_path_to_rational(path: str) -> Fraction:
    return path_to_rational(tree_path_to_farey_path(path))


def rational_to_tree_path(t: Fraction) -> str:
    return farey_path_to_tree_path(rational_to_path(t))
