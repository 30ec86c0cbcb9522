"""Evaluating squared triples at special values of ``s = q + 1/q``.

* ``k=K``: integer ``s = K``; the triple solves ``x^2+y^2+z^2 + K(xy+yz+zx) = (3+3K)xyz``.
  ``q=1`` is the case ``K = 2``.
* ``q=i``: exact Gaussian evaluation, which lands on classical Markov triples.
* ``super``: ``s = ε`` with ``ε^2 = 0``.
* ``cos:P``: floating point ``s = 2 cos(pi/P)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalInconsistency, NonRealValue, OutOfRange
from .polyring import I, DualNumber, Gaussian, LaurentPoly, evaluate, to_s_basis

__all__ = [
    "SpecPoint",
    "parse_spec",
    "spec_k",
    "kgm_mutate",
    "satisfies_kgm",
    "spec_qi",
    "spec_super",
    "super_sides",
    "super_positive",
    "spec_root_of_unity",
    "classical_children",
    "classical_tree",
    "apply",
]

EPS = DualNumber(0, 1)


@dataclass(frozen=True)
class SpecPoint:
    tag: str  # "k", "q_one", "q_i", "super" or "root"
    value: int | None = None

    def __str__(self):
        return {
            "k": f"k={self.value}",
            "q_one": "q=1",
            "q_i": "q=i",
            "super": "super",
            "root": f"cos:{self.value}",
        }[self.tag]


def parse_spec(text: str) -> SpecPoint:
    t = text.strip().replace(" ", "")
    if t.startswith("k="):
        return SpecPoint("k", int(t[2:]))
    if t == "q=1":
        return SpecPoint("q_one")
    if t == "q=i":
        return SpecPoint("q_i")
    if t in ("super", "eps", "ε"):
        return SpecPoint("super")
    if t.startswith("cos:"):
        p = int(t[4:])
        if p < 3:
            raise OutOfRange("cos:P needs P >= 3")
        return SpecPoint("root", p)
    raise ValueError(f"unknown specialization {text!r}")


def satisfies_kgm(x, y, z, k) -> bool:
    return x * x + y * y + z * z + k * (x * y + y * z + z * x) == (3 + 3 * k) * x * y * z


def spec_k(triple, k: int, allow_degenerate: bool = False) -> tuple[int, int, int]:
    """Integer values at ``s = k``, checked against the k-generalized equation.

    Negative ``k`` is refused unless ``allow_degenerate`` is set, in which case
    the values come back unchecked.
    """
    if k < 0 and not allow_degenerate:
        raise OutOfRange(f"k={k} is degenerate; pass allow_degenerate to evaluate anyway")
    vals = tuple(to_s_basis(p)(k) for p in triple)
    if k >= 0 and not satisfies_kgm(*vals, k):
        raise InternalInconsistency(f"{vals} does not solve the k={k} equation")
    return vals


def kgm_mutate(vals, index: int, k: int) -> tuple[int, int, int]:
    """Vieta partner in the k-generalized equation."""
    out = list(vals)
    a = out[index]
    b, c = (out[i] for i in range(3) if i != index)
    out[index] = (3 + 3 * k) * b * c - k * (b + c) - a
    return tuple(out)


def spec_qi(triple) -> tuple[int, int, int]:
    out = []
    for p in triple:
        v = evaluate(p, I)
        if not isinstance(v, Gaussian):
            v = Gaussian(v, 0)
        if not v.is_real():
            raise NonRealValue(f"{p} at q=i is {v}")
        out.append(int(v.re))
    x, y, z = out
    if x * x + y * y + z * z != 3 * x * y * z:
        raise InternalInconsistency(f"{tuple(out)} is not a Markov triple")
    return tuple(out)


def super_sides(x: DualNumber, y: DualNumber, z: DualNumber) -> tuple[DualNumber, DualNumber]:
    lhs = x * x + y * y + z * z + (x * y + y * z + x * z) * EPS
    rhs = (1 + EPS) * 3 * x * y * z
    return lhs, rhs


def spec_super(triple) -> tuple[DualNumber, DualNumber, DualNumber]:
    vals = tuple(to_s_basis(p)(EPS) for p in triple)
    lhs, rhs = super_sides(*vals)
    if lhs != rhs:
        raise InternalInconsistency(f"super equation fails: {lhs} != {rhs}")
    return vals


def super_positive(vals) -> bool:
    """Real parts positive, ε parts nonnegative."""
    return all(v.real > 0 and v.eps >= 0 for v in vals)


def spec_root_of_unity(triple, p: int, tol: float = 1e-9) -> float:
    """Relative residual of the deformed equation at ``s = 2 cos(pi/p)``.

    Raises :class:`InternalInconsistency` when it exceeds ``tol``.
    """
    if p < 3:
        raise OutOfRange("p must be at least 3")
    s = 2 * math.cos(math.pi / p)
    x, y, z = (float(to_s_basis(e)(s)) for e in triple)
    lhs = x * x + y * y + z * z + s * (x * y + y * z + x * z)
    rhs = 3 * (1 + s) * x * y * z
    scale = max(abs(lhs), abs(rhs))
    res = abs(lhs - rhs) / scale if scale else abs(lhs - rhs)
    if res >= tol:
        raise InternalInconsistency(f"residual {res:g} at p={p} exceeds {tol:g}")
    return res


def apply(point: SpecPoint, triple):
    if point.tag == "k":
        return spec_k(triple, point.value)
    if point.tag == "q_one":
        vals = tuple(evaluate(e, 1) for e in triple)
        if sum(vals) ** 2 != 9 * vals[0] * vals[1] * vals[2]:
            raise InternalInconsistency(f"{vals} fails (x+y+z)^2 = 9xyz")
        return vals
    if point.tag == "q_i":
        return spec_qi(triple)
    if point.tag == "super":
        return spec_super(triple)
    if point.tag == "root":
        return spec_root_of_unity(triple, point.value)
    raise ValueError(point.tag)


# ---- classical Markov tree, generated independently ---------------------

def classical_children(t: tuple[int, int, int]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Vieta jumps on a sorted Markov triple: L replaces the middle entry, R the smallest."""
    x, y, z = t
    left = tuple(sorted((x, z, 3 * x * z - y)))
    right = tuple(sorted((y, z, 3 * y * z - x)))
    return left, right


def classical_tree(depth: int) -> dict[str, tuple[int, int, int]]:
    out = {"": (1, 2, 5)}
    frontier = [""]
    for _ in range(depth):
        nxt = []
        for path in frontier:
            left, right = classical_children(out[path])
            out[path + "L"] = left
            out[path + "R"] = right
            nxt += [path + "L", path + "R"]
        frontier = nxt
    return out
