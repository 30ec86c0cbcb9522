"""Depth-bounded verification sweeps, the a_l search and tree persistence.

Set ``MIRROR_MARKOV_THREADS`` to an integer above 1 to spread the mirror-tree
sweeps over that many worker processes.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import branches, mirrortree, squaredtree
from .errors import Inconsistent, MirrorMarkovError, NotDivisible
from .farey import path_to_rational
from .gmscf import numerator_matches_M, positivity_certificate
from .mirrortree import BLUE, RED, squared_of
from .polyring import Q3, LaurentPoly, evaluate, exact_div, from_json, is_positive, to_json
from .report import Report, failed, passed

__all__ = [
    "FixedBranch",
    "fixed_branch",
    "search_a_ell",
    "scan_mirror",
    "verify_positivity",
    "verify_uniqueness",
    "verify_equation",
    "verify_factorization",
    "verify_qmarkov",
    "verify_orbifold",
    "verify_cf",
    "run_check",
    "CHECKS",
    "dump_tree",
    "load_tree",
    "worker_count",
]


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MIRROR_MARKOV_THREADS", "1")))
    except ValueError:
        return 1


# ---- positivity / uniqueness over the mirror tree -------------------------

def _scan_nodes(nodes):
    """First non-positive entry (or None) and ``(max, path)`` pairs of ``nodes``."""
    bad = None
    maxima = []
    for node in nodes:
        if bad is None:
            for i, p in enumerate(node.entries):
                if not is_positive(p):
                    bad = {"path": node.path, "entry": i, "poly": str(p)}
                    break
        maxima.append((node.maximum, node.path))
    return bad, maxima


def _scan_subtree(args):
    root, depth = args
    level = [root]
    nodes = [root]
    for _ in range(depth):
        level = [c for n in level for c in (mirrortree.mutate_left(n), mirrortree.mutate_right(n))]
        nodes.extend(level)
    return _scan_nodes(nodes)


def scan_mirror(depth: int, nodes=None, workers: int | None = None):
    """Collect positivity and maxima data for every mirror node to ``depth``.

    ``nodes`` overrides the generated tree (used for self-tests).
    """
    if nodes is not None:
        return _scan_nodes(nodes)
    workers = worker_count() if workers is None else workers
    split = min(depth, 4)
    if workers <= 1 or depth < 6:
        return _scan_subtree((mirrortree.root_chain()[-1], depth))
    top = mirrortree.generate_mirror(split - 1)
    frontier = [c for n in top[-(2 ** (split - 1)):] for c in (mirrortree.mutate_left(n), mirrortree.mutate_right(n))]
    bad, maxima = _scan_nodes(top)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for b, m in pool.map(_scan_subtree, [(n, depth - split) for n in frontier]):
            bad = bad or b
            maxima.extend(m)
    return bad, maxima


def _positivity_report(depth, bad, count) -> Report:
    if bad:
        return failed("positivity", depth, bad, nodes=count)
    return passed("positivity", depth, nodes=count)


def _uniqueness_report(depth, maxima) -> Report:
    seen: dict[LaurentPoly, str] = {}
    for m, path in maxima:
        if m in seen:
            return failed("uniqueness", depth, {"paths": [seen[m], path], "poly": str(m)}, nodes=len(maxima))
        seen[m] = path
    return passed("uniqueness", depth, nodes=len(maxima))


def verify_positivity(depth: int, nodes=None) -> Report:
    bad, maxima = scan_mirror(depth, nodes)
    return _positivity_report(depth, bad, len(maxima))


def verify_uniqueness(depth: int, nodes=None) -> Report:
    _, maxima = scan_mirror(depth, nodes)
    return _uniqueness_report(depth, maxima)


def verify_conjectures(depth: int) -> tuple[Report, Report]:
    """Positivity and uniqueness from a single pass over the tree."""
    bad, maxima = scan_mirror(depth)
    return _positivity_report(depth, bad, len(maxima)), _uniqueness_report(depth, maxima)


# ---- other sweeps ----------------------------------------------------------

def verify_equation(depth: int) -> Report:
    count = 0
    for level in squaredtree.iter_levels(depth, verify=True):
        for node in level:
            if not squaredtree.check_equation(*node.entries):
                return failed("equation", depth, {"path": node.path})
            count += 1
    return passed("equation", depth, nodes=count)


def verify_factorization(depth: int) -> Report:
    count, bad = mirrortree.verify_factorization(depth)
    if bad is not None:
        return failed("factorization", depth, {"path": bad}, nodes=count)
    return passed("factorization", depth, nodes=count)


def verify_qmarkov(n_max: int) -> Report:
    for n in range(1, n_max + 1):
        for kind, fn in (("fibonacci", branches.qmarkov_fib), ("pell", branches.qmarkov_pell)):
            try:
                fn(n)
            except MirrorMarkovError as exc:
                return failed("qmarkov", n_max, {"branch": kind, "n": n, "error": str(exc)})
        rep = branches.mirror_identities(n)
        if not rep.ok:
            return failed("qmarkov", n_max, rep.witness)
    return passed("qmarkov", n_max, terms=n_max)


def verify_orbifold(depth: int) -> Report:
    count = 0
    for level in mirrortree.iter_levels(depth):
        for node in level:
            ks = mirrortree.orbifold_agrees(mirrortree.orbifold_at(node.path), node)
            if ks is None:
                return failed("orbifold", depth, {"path": node.path})
            count += 1
    return passed("orbifold", depth, nodes=count)


def verify_cf(depth: int) -> Report:
    count = 0
    for length in range(depth + 1):
        for word in product("LR", repeat=length):
            t = path_to_rational("".join(word))
            if not numerator_matches_M(t):
                return failed("cf", depth, {"t": f"{t.numerator}/{t.denominator}", "reason": "numerator"})
            cert = positivity_certificate(t)
            if not cert.ok:
                return failed("cf", depth, cert.witness)
            count += 1
    return passed("cf", depth, rationals=count)


CHECKS = {
    "equation": verify_equation,
    "factorization": verify_factorization,
    "positivity": verify_positivity,
    "uniqueness": verify_uniqueness,
    "qmarkov": verify_qmarkov,
    "orbifold": verify_orbifold,
    "cf": verify_cf,
}


def run_check(name: str, depth: int) -> Report:
    return CHECKS[name](depth)


# ---- the a_l search ---------------------------------------------------------

@dataclass(frozen=True)
class FixedBranch:
    ell_path: str
    color: str
    m: LaurentPoly  # the fixed entry
    seq: tuple[LaurentPoly, ...]  # p_0, p_1, ...
    paths: tuple[str, ...]  # node carrying (p_{n-1}, p_n), n >= 1

    @property
    def eps(self) -> int:
        return BLUE if self.color == "blue" else RED


def _branch_paths(ell_path: str, color: str, length: int) -> list[str]:
    """Paths of the nodes along a branch that keeps the maximum of ``ell_path``."""
    if ell_path == squaredtree.ROOT:
        if color != "blue":
            raise ValueError("the branch fixing 1 is blue")
        return [squaredtree.CHAIN] + ["L" * k for k in range(length)]
    if ell_path == squaredtree.CHAIN:
        if color != "red":
            raise ValueError("the branch fixing 1 + q is red")
        return [""] + ["R" + "L" * k for k in range(length)]
    start = mirrortree.node_at(ell_path)
    # L child keeps m in the middle, then R makes it the smallest; the R
    # child needs one more R.  From there on every step is L.
    first = {"L": ell_path + "LR", "R": ell_path + "RR"}
    # the tail colour of the L-then-R branch is opposite to the node's colour
    tail = {"L": -start.sign, "R": start.sign}
    want = BLUE if color == "blue" else RED
    side = "L" if tail["L"] == want else "R"
    head = ell_path + side
    return [head] + [first[side] + "L" * k for k in range(length)]


def fixed_branch(ell_path: str, color: str, n_terms: int) -> FixedBranch:
    """Materialize ``p_0 .. p_{n_terms}`` along the chosen branch."""
    if color not in ("blue", "red"):
        raise ValueError(f"color must be blue or red, got {color!r}")
    paths = _branch_paths(ell_path, color, n_terms)
    m = mirrortree.node_at(ell_path).maximum
    seq: list[LaurentPoly] = []
    for path in paths[:n_terms]:
        node = mirrortree.node_at(path)
        rest = list(node.entries)
        if m not in rest:
            raise ValueError(f"node {path} does not contain the fixed entry {m}")
        rest.remove(m)
        if not seq:
            seq.append(rest[0] if rest[1] == node.maximum else rest[1])
        elif seq[-1] not in rest:
            raise ValueError(f"node {path} does not continue the branch")
        seq.append(node.maximum)
    return FixedBranch(ell_path, color, m, tuple(seq), tuple(paths[:n_terms]))


def search_a_ell(ell_path: str, color: str, n_max: int) -> LaurentPoly:
    """Find the normalising constant ``a_l`` for a fixed-maximum branch.

    For each ``1 <= n <= n_max`` computes
    ``(q^d M + q^(d+e) P_n + q^(d-e) P_{n-1}) / ([3]_q p_n p_{n-1})`` with
    ``d = deg p_{n+1} - 1``, ``e = +1`` on blue and ``-1`` on red branches.
    The quotient must be the same polynomial for every ``n``, have
    nonnegative coefficients and equal the fixed Markov number at ``q = 1``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    br = fixed_branch(ell_path, color, n_max + 2)
    p, e = br.seq, br.eps
    M = squared_of(br.m)
    ell = evaluate(br.m, 1)
    candidate = None
    for n in range(1, n_max + 1):
        d = p[n + 1].degree - 1
        P_n, P_prev = squared_of(p[n]), squared_of(p[n - 1])
        num = M.shift(d) + P_n.shift(d + e) + P_prev.shift(d - e)
        try:
            got = exact_div(num, Q3 * p[n] * p[n - 1])
        except NotDivisible:
            raise Inconsistent(n, "not divisible", candidate) from None
        if candidate is None:
            candidate = got
        elif got != candidate:
            raise Inconsistent(n, got, candidate)
    if any(c < 0 for c in candidate.coeffs) or candidate.min_exp < 0:
        raise Inconsistent(n_max, candidate, "a polynomial with nonnegative coefficients")
    if evaluate(candidate, 1) != ell:
        raise Inconsistent(n_max, candidate, f"value {ell} at q=1")
    return candidate


# ---- persistence -------------------------------------------------------------

SCHEMA = 1


def dump_tree(kind: str, depth: int) -> dict:
    if kind == "mirror":
        nodes = [mirrortree.node_to_json(n) for n in mirrortree.generate_mirror(depth)]
    elif kind == "squared":
        nodes = [
            {"path": n.path, "triple": [to_json(p) for p in n.entries]}
            for n in squaredtree.generate(depth)
        ]
    else:
        raise ValueError(f"unknown tree kind {kind!r}")
    return {"schema": SCHEMA, "kind": kind, "depth": depth, "nodes": nodes}


def load_tree(doc: dict | str):
    """Inverse of :func:`dump_tree`; accepts the dict or its JSON text."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    if doc["kind"] == "mirror":
        return [mirrortree.node_from_json(n) for n in doc["nodes"]]
    if doc["kind"] == "squared":
        return [
            squaredtree.SquaredTriple(tuple(from_json(p) for p in n["triple"]), n["path"])
            for n in doc["nodes"]
        ]
    raise ValueError(f"unknown tree kind {doc['kind']!r}")
