"""Symmetric solutions of the deformed squared Markov equation

    X^2 + Y^2 + Z^2 + (q + 1/q)(XY + YZ + XZ) = 3(1 + q + 1/q) XYZ

and the tree they form under mutation.

Tree addressing: the node ``""`` is ``(1, M_2, M_5)``; above it sits the root
chain ``"^"`` = ``(1, 1, M_2)`` and ``"^^"`` = ``(1, 1, 1)``.  Entries are kept
sorted by their value at ``q = 1`` (ties broken by degree).  From a node, L
mutates the middle entry and R the smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import AmbiguousMax, InternalInconsistency, Rejected, RejectReason
from .farey import check_path
from .polyring import ONE, S, LaurentPoly, evaluate, exact_div, is_symmetric, parse_poly

__all__ = [
    "SquaredTriple",
    "ROOT",
    "CHAIN",
    "M2",
    "M5",
    "check_equation",
    "mutate",
    "sort_key",
    "children",
    "root_chain",
    "iter_levels",
    "generate",
    "node_at",
    "is_degree_singular",
    "max_of",
    "descend",
]

#: path markers for the two root-chain nodes above ``""``
ROOT = "^^"
CHAIN = "^"

M2 = parse_poly("q^-1 + 2 + q")
M5 = M2 * M2 + S * M2 + 1  # mutation of (1, 1, M2) at a 1

_THREE_ONE_PLUS_S = 3 * (S + 1)

Triple = tuple[LaurentPoly, LaurentPoly, LaurentPoly]


@dataclass(frozen=True)
class SquaredTriple:
    entries: Triple
    path: str | None = None

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> LaurentPoly:
        return self.entries[i]

    @property
    def maximum(self) -> LaurentPoly:
        return self.entries[2]


def sort_key(p: LaurentPoly) -> tuple[int, int]:
    return (evaluate(p, 1), p.degree if p.degree is not None else -1)


def _sorted(entries) -> Triple:
    return tuple(sorted(entries, key=sort_key))


def check_equation(x: LaurentPoly, y: LaurentPoly, z: LaurentPoly) -> bool:
    lhs = x * x + y * y + z * z + S * (x * y + y * z + x * z)
    rhs = _THREE_ONE_PLUS_S * (x * y * z)
    return lhs == rhs


def _linear_form(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> LaurentPoly:
    return _THREE_ONE_PLUS_S * (b * c) - S * (b + c) - a


def _division_form(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> LaurentPoly:
    return exact_div(b * b + S * (b * c) + c * c, a)


def mutate(t: SquaredTriple | Triple, index: int, verify: bool = True) -> SquaredTriple:
    """Replace entry ``index`` by its Vieta partner (other entries stay put)."""
    entries = tuple(t)
    a = entries[index]
    b, c = (entries[i] for i in range(3) if i != index)
    new = _linear_form(a, b, c)
    if verify and new != _division_form(a, b, c):
        raise InternalInconsistency(f"mutation formulas disagree at index {index} of {entries}")
    out = list(entries)
    out[index] = new
    return SquaredTriple(tuple(out))


def children(node: SquaredTriple, verify: bool = False) -> tuple[SquaredTriple, SquaredTriple]:
    """``(L child, R child)`` of a binary-tree node."""
    base = node.path or ""
    left = mutate(node, 1, verify)
    right = mutate(node, 0, verify)
    return (
        SquaredTriple(_sorted(left.entries), base + "L"),
        SquaredTriple(_sorted(right.entries), base + "R"),
    )


def root_chain() -> list[SquaredTriple]:
    return [
        SquaredTriple((ONE, ONE, ONE), ROOT),
        SquaredTriple((ONE, ONE, M2), CHAIN),
        SquaredTriple((ONE, M2, M5), ""),
    ]


def iter_levels(depth: int, verify: bool = False) -> Iterator[list[SquaredTriple]]:
    """Yield the binary tree one level at a time, level 0 being ``[(1, M2, M5)]``."""
    level = [root_chain()[-1]]
    yield level
    for _ in range(depth):
        level = [child for node in level for child in children(node, verify)]
        yield level


def generate(depth: int, verify: bool = False) -> list[SquaredTriple]:
    """All ``2**(depth+1) - 1`` nodes down to ``depth``, level by level."""
    return [node for level in iter_levels(depth, verify) for node in level]


def node_at(path: str) -> SquaredTriple:
    if path in (ROOT, CHAIN):
        return {n.path: n for n in root_chain()}[path]
    node = root_chain()[-1]
    for step in check_path(path):
        left, right = children(node)
        node = left if step == "L" else right
    return node


def is_degree_singular(t) -> bool:
    degs = {p.degree for p in t}
    return len(degs) == 1


def max_of(t) -> LaurentPoly:
    """The entry of strictly largest degree."""
    entries = list(t)
    top = max(p.degree for p in entries)
    hits = [p for p in entries if p.degree == top]
    if len(hits) != 1:
        raise AmbiguousMax(f"{len(hits)} entries share the top degree {top}")
    return hits[0]


def descend(x: LaurentPoly, y: LaurentPoly, z: LaurentPoly) -> str:
    """Locate a triple in the tree by repeatedly mutating its maximum.

    Returns the node's path (``"^^"`` and ``"^"`` for the root chain) or
    raises :class:`Rejected` carrying the reason.
    """
    entries = (x, y, z)
    if any(p.is_zero() for p in entries):
        raise Rejected(RejectReason.ZERO_ENTRY)
    for p in entries:
        if not is_symmetric(p):
            raise Rejected(RejectReason.NOT_SYMMETRIC, str(p))
    if not check_equation(*entries):
        raise Rejected(RejectReason.NOT_A_SOLUTION)

    cur = _sorted(entries)
    chain = {tuple(n.entries): n.path for n in root_chain()}
    steps: list[str] = []
    cap = max(p.degree for p in cur) + 1
    for _ in range(cap + 1):
        if cur in chain:
            path = chain[cur]
            if path != "":
                if steps:
                    break
                return path
            path = "".join(reversed(steps))
            if _sorted(node_at(path).entries) != _sorted(entries):
                break
            return path
        if is_degree_singular(cur):
            break
        try:
            top = max_of(cur)
        except AmbiguousMax:
            break
        i = cur.index(top)
        rest = [p for j, p in enumerate(cur) if j != i]
        new = mutate(cur, i, verify=False)[i]
        if new.is_zero() or new.degree >= top.degree:
            break
        steps.append("R" if sort_key(new) < sort_key(min(rest, key=sort_key)) else "L")
        cur = _sorted((*rest, new))
    raise Rejected(RejectReason.NOT_ON_TREE, f"descent did not reach (1, M2, M5) after {len(steps)} steps")
