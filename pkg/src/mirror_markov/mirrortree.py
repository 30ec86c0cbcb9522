"""Mirror Markov numbers: polynomial square roots of the squared tree.

A node is an ordered triple ``(a, b, c)`` of honest polynomials together with
the sign of the edge that produced it (+1 blue, -1 red).  The two mutations:

* left edge (tree step L):  ``(a, b, c) -> (a, c, q^deg(c) (q^e A + C) / mirror(b))``,
  new edge sign ``e``;
* right edge (tree step R): ``(a, b, c) -> (b, c, q^deg(c) (q^-e B + C) / mirror(a))``,
  new edge sign ``-e``;

where capitals are ``squared_of`` the lower-case entries.  The generic rule
does not apply to the first two steps from ``(1, 1, 1)``, so that chain is
fixed by hand.

The orbifold rule works in ``u = q^(1/2)`` (see :func:`orbifold_mutate`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import InternalInconsistency, NotDivisible
from .farey import check_path
from .polyring import (
    ONE,
    LaurentPoly,
    evaluate,
    exact_div,
    from_json,
    inflate,
    involute,
    mirror,
    monomial,
    parse_poly,
    to_json,
)
from .squaredtree import CHAIN, ROOT, SquaredTriple, iter_levels as squared_levels

__all__ = [
    "MirrorTriple",
    "OrbifoldState",
    "BLUE",
    "RED",
    "M_1",
    "M_2",
    "M_5",
    "squared_of",
    "mutate_left",
    "mutate_right",
    "child",
    "root_chain",
    "iter_levels",
    "generate_mirror",
    "node_at",
    "verify_factorization",
    "classical_shadow",
    "orbifold_root_chain",
    "orbifold_mutate",
    "orbifold_at",
    "orbifold_agrees",
    "node_to_json",
    "node_from_json",
]

BLUE = 1
RED = -1

M_1 = ONE
M_2 = parse_poly("1 + q")
M_5 = parse_poly("1 + 2q + 2q^2")


def squared_of(p: LaurentPoly) -> LaurentPoly:
    """``p(q) * p(1/q)``."""
    return p * involute(p)


@dataclass(frozen=True)
class MirrorTriple:
    entries: tuple[LaurentPoly, LaurentPoly, LaurentPoly]
    sign: int = BLUE
    path: str = ""
    # squared_of(entries), carried along so children do not recompute it
    squared: tuple[LaurentPoly, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.sign not in (BLUE, RED):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.squared is None:
            object.__setattr__(self, "squared", tuple(squared_of(p) for p in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def maximum(self) -> LaurentPoly:
        return self.entries[2]

    @property
    def color(self) -> str:
        return "blue" if self.sign == BLUE else "red"


def _new_entry(c: LaurentPoly, shift: int, X: LaurentPoly, C: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    num = (X.shift(shift) + C).shift(c.degree)
    out = exact_div(num, mirror(den))
    if out.min_exp < 0:
        raise NotDivisible(num, mirror(den), "mutation result has negative powers of q")
    return out


def _check_child(old: LaurentPoly, keep: tuple[LaurentPoly, LaurentPoly], new: LaurentPoly):
    c = keep[1]
    want = 2 * c.degree - old.degree
    if new.degree != want:
        raise InternalInconsistency(f"new entry has degree {new.degree}, expected {want}")
    vals = [evaluate(p, 1) for p in (*keep, new)]
    if not vals[0] <= vals[1] <= vals[2]:
        raise InternalInconsistency(f"children out of order at q=1: {vals}")


def mutate_left(t: MirrorTriple, sign: int | None = None) -> MirrorTriple:
    """Left-edge mutation; ``sign`` overrides the edge sign (for experiments)."""
    e = t.sign if sign is None else sign
    a, b, c = t.entries
    A, _, C = t.squared
    new = _new_entry(c, e, A, C, b)
    _check_child(b, (a, c), new)
    return MirrorTriple((a, c, new), e, t.path + "L", (A, C, squared_of(new)))


def mutate_right(t: MirrorTriple, sign: int | None = None) -> MirrorTriple:
    """Right-edge mutation; the new edge carries the opposite sign."""
    e = t.sign if sign is None else sign
    a, b, c = t.entries
    _, B, C = t.squared
    new = _new_entry(c, -e, B, C, a)
    _check_child(a, (b, c), new)
    return MirrorTriple((b, c, new), -e, t.path + "R", (B, C, squared_of(new)))


def child(t: MirrorTriple, step: str) -> MirrorTriple:
    return mutate_left(t) if step == "L" else mutate_right(t)


def root_chain() -> list[MirrorTriple]:
    return [
        MirrorTriple((M_1, M_1, M_1), BLUE, ROOT),
        MirrorTriple((M_1, M_1, M_2), BLUE, CHAIN),
        MirrorTriple((M_1, M_2, M_5), BLUE, ""),
    ]


def iter_levels(depth: int) -> Iterator[list[MirrorTriple]]:
    level = [root_chain()[-1]]
    yield level
    for _ in range(depth):
        level = [ch for node in level for ch in (mutate_left(node), mutate_right(node))]
        yield level


def generate_mirror(depth: int) -> list[MirrorTriple]:
    """Every node from ``(1, 1+q, 1+2q+2q^2)`` down to ``depth``, level by level."""
    return [n for level in iter_levels(depth) for n in level]


def node_at(path: str) -> MirrorTriple:
    if path in (ROOT, CHAIN):
        return {n.path: n for n in root_chain()}[path]
    node = root_chain()[-1]
    for step in check_path(path):
        node = child(node, step)
    return node


def _sorted_key(entries):
    return tuple(sorted(entries, key=lambda p: (evaluate(p, 1), p.degree)))


def verify_factorization(depth: int) -> tuple[int, str | None]:
    """Compare squared mirror nodes with the squared tree, level by level.

    Returns ``(nodes checked, first mismatching path or None)``.
    """
    checked = 0
    for mlevel, slevel in zip(iter_levels(depth), squared_levels(depth)):
        for m, s in zip(mlevel, slevel):
            if m.path != s.path or _sorted_key(m.squared) != tuple(s.entries):
                return checked, m.path
            checked += 1
    return checked, None


def factorization_matches(m: MirrorTriple, s: SquaredTriple) -> bool:
    return _sorted_key(m.squared) == tuple(s.entries)


def classical_shadow(t) -> tuple[int, int, int]:
    x, y, z = (evaluate(p, 1) for p in t)
    if x * x + y * y + z * z != 3 * x * y * z:
        raise InternalInconsistency(f"({x}, {y}, {z}) is not a Markov triple")
    return (x, y, z)


# ---- orbifold mutation -------------------------------------------------

U = monomial(1)
U_INV = monomial(-1)
CW = "clockwise"
CCW = "counterclockwise"


@dataclass(frozen=True)
class OrbifoldState:
    """Three loop values in ``u = q^(1/2)`` and the cyclic order they are read in."""

    entries: tuple[LaurentPoly, LaurentPoly, LaurentPoly]
    orientation: str = CW

    def __post_init__(self):
        if self.orientation not in (CW, CCW):
            raise ValueError(f"unknown orientation {self.orientation!r}")

    def neighbours(self, i: int) -> tuple[int, int]:
        """``(next, previous)`` positions of ``i`` in the current cyclic order."""
        if self.orientation == CW:
            return (i + 1) % 3, (i - 1) % 3
        return (i - 1) % 3, (i + 1) % 3


_POS = {"x": 0, "y": 1, "z": 2}


def orbifold_mutate(st: OrbifoldState, at) -> OrbifoldState:
    """``x' = (u X_next + u^-1 X_prev) / x~``; the orientation flips."""
    i = _POS[at] if isinstance(at, str) else int(at)
    nxt, prv = st.neighbours(i)
    e = st.entries
    num = U * squared_of(e[nxt]) + U_INV * squared_of(e[prv])
    new = exact_div(num, involute(e[i]))
    out = list(e)
    out[i] = new
    return OrbifoldState(tuple(out), CCW if st.orientation == CW else CW)


def orbifold_root_chain() -> list[OrbifoldState]:
    s0 = OrbifoldState((ONE, ONE, ONE), CW)
    s1 = orbifold_mutate(s0, "y")
    s2 = orbifold_mutate(s1, "x")
    return [s0, s1, s2]


def _ranked(entries) -> list[int]:
    """Positions sorted by value at 1 (ties by position)."""
    return sorted(range(3), key=lambda i: (evaluate(entries[i], 1), i))


def orbifold_at(path: str) -> OrbifoldState:
    """Follow a tree path with the orbifold rule: L hits the middle value, R the smallest."""
    st = orbifold_root_chain()[-1]
    for step in check_path(path):
        order = _ranked(st.entries)
        st = orbifold_mutate(st, order[1] if step == "L" else order[0])
    return st


def _unit_monomial_ratio(p: LaurentPoly, ref: LaurentPoly) -> int | None:
    """``k`` if ``p == u^k * ref`` exactly, else None."""
    if p.is_zero() or ref.is_zero() or len(p.coeffs) != len(ref.coeffs):
        return None
    k = p.min_exp - ref.min_exp
    return k if p == ref.shift(k) else None


def orbifold_agrees(st: OrbifoldState, node: MirrorTriple) -> list[int] | None:
    """Exponents ``k`` with ``orbifold entry = u^k * mirror entry``, matched by value at 1."""
    mine = sorted(st.entries, key=lambda p: evaluate(p, 1))
    ref = [inflate(p, 2) for p in node.entries]
    out = []
    for p, r in zip(mine, ref):
        if evaluate(p, 1) != evaluate(r, 1):
            return None
        k = _unit_monomial_ratio(p, r)
        if k is None:
            return None
        out.append(k)
    return out


# ---- JSON --------------------------------------------------------------

def node_to_json(t: MirrorTriple) -> dict:
    return {
        "path": t.path,
        "sign": "+1" if t.sign == BLUE else "-1",
        "triple": [to_json(p) for p in t.entries],
    }


def node_from_json(obj: dict) -> MirrorTriple:
    entries = tuple(from_json(p) for p in obj["triple"])
    return MirrorTriple(entries, int(obj["sign"]), obj["path"])
