"""The ten acceptance criteria, each printing one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest.
"""

import time
from fractions import Fraction
from itertools import product

import pytest

from mirror_markov import branches, harness, mirrortree, specialize, squaredtree
from mirror_markov.errors import NotDivisible, Rejected, RejectReason
from mirror_markov.farey import path_to_rational
from mirror_markov.gmscf import cf_eval, gms_cf, numerator_matches_M
from mirror_markov.polyring import ONE, Q3, S, ZERO, DualNumber, monomial, parse_poly

P = parse_poly

TABLE = {
    1: ("1", "1"),
    2: ("1 + q", "q^-1 + 2 + q"),
    5: ("1 + 2q + 2q^2", "2q^-2 + 6q^-1 + 9 + 6q + 2q^2"),
    13: ("2 + 4q + 5q^2 + 2q^3", "4q^-3 + 18q^-2 + 38q^-1 + 49 + 38q + 18q^2 + 4q^3"),
    29: (
        "3 + 8q + 10q^2 + 6q^3 + 2q^4",
        "6q^-4 + 34q^-3 + 98q^-2 + 176q^-1 + 213 + 176q + 98q^2 + 34q^3 + 6q^4",
    ),
}
TABLE_PATHS = {1: "^^", 2: "^", 5: "", 13: "L", 29: "R"}

FIGURE = {
    "": ("1 + 2q + 2q^2", None),
    "L": ("2 + 4q + 5q^2 + 2q^3", "blue"),
    "R": ("3 + 8q + 10q^2 + 6q^3 + 2q^4", "red"),
    "LL": ("2 + 7q + 11q^2 + 10q^3 + 4q^4", "blue"),
    "LR": ("6 + 24q + 47q^2 + 55q^3 + 40q^4 + 18q^5 + 4q^6", "red"),
    "RL": ("3 + 14q + 34q^2 + 48q^3 + 42q^4 + 22q^5 + 6q^6", "red"),
    "RR": ("6 + 28q + 70q^2 + 108q^3 + 111q^4 + 74q^5 + 30q^6 + 6q^7", "blue"),
}


def c1_table():
    bad = []
    for n, (m_text, M_text) in TABLE.items():
        path = TABLE_PATHS[n]
        m = mirrortree.node_at(path).maximum
        M = squaredtree.node_at(path).maximum
        if m != P(m_text) or M != P(M_text) or mirrortree.squared_of(m) != M:
            bad.append(n)
    return not bad, f"{2 * len(TABLE)} table polynomials, mismatches {bad}"


def c2_figure():
    nodes = {n.path: n for n in mirrortree.generate_mirror(2)}
    bad = [
        path
        for path, (text, colour) in FIGURE.items()
        if nodes[path].maximum != P(text) or (colour and nodes[path].color != colour)
    ]
    return not bad, f"7 figure nodes with colours, mismatches {bad}"


def c3_forbidden():
    start = mirrortree.node_at("L")
    try:
        mirrortree.mutate_left(start, sign=-1)
    except NotDivisible as exc:
        ok = exc.num == P("4 + 18q + 39q^2 + 49q^3 + 38q^4 + 18q^5 + 4q^6") and exc.den == P("2 + 2q + q^2")
        return ok, f"NotDivisible: ({exc.num}) / ({exc.den})"
    return False, "mutation unexpectedly succeeded"


def c4_continued_fraction():
    cf = gms_cf(Fraction(1, 3))
    ok = cf.entries == (2 * S + 2, ONE, S + 1, 2 * S + 2)
    ok &= cf_eval(cf)[0].coeffs == (4, 18, 38, 49, 38, 18, 4)
    # Farey depth 1..6, the root 1/2 being depth 1
    ts = [path_to_rational("".join(w)) for k in range(6) for w in product("LR", repeat=k)]
    hits = sum(numerator_matches_M(t) for t in ts)
    return ok and hits == len(ts) == 63, f"F(1/3) entries and numerator ok={ok}, {hits}/{len(ts)} numerators match"


def c5_qmarkov():
    for n in range(1, 31):
        if branches.qmarkov_fib(n) != Q3 or branches.qmarkov_pell(n) != Q3:
            return False, f"constant fails at n={n}"
        if branches.fib(n).degree != n or branches.pell(n).degree != 2 * n:
            return False, f"degree law fails at n={n}"
    ok = branches.fib(5) == P("4 + 14q + 25q^2 + 26q^3 + 16q^4 + 4q^5")
    ok &= branches.pell(4) == P("9 + 48q + 130q^2 + 218q^3 + 246q^4 + 192q^5 + 102q^6 + 34q^7 + 6q^8")
    return ok, "q-Markov constants n <= 30, degree laws, f_5 and p_4"


def c6_factorization():
    count, bad = mirrortree.verify_factorization(10)
    return bad is None and count == 2047, f"{count} nodes, first mismatch {bad}"


def _reason(triple):
    try:
        squaredtree.descend(*triple)
    except Rejected as exc:
        return exc.reason
    return None


def c7_membership():
    nodes = squaredtree.generate(8)
    wrong = [n.path for n in nodes if squaredtree.descend(*n.entries) != n.path]
    M2, M5 = squaredtree.M2, squaredtree.M5
    rejections = {
        "(1,1,2)": (_reason((ONE, ONE, 2 * ONE)), RejectReason.NOT_A_SOLUTION),
        "zero entry": (_reason((ONE, -monomial(1), ZERO)), RejectReason.ZERO_ENTRY),
        "zero in tree triple": (_reason((ZERO, M2, M5)), RejectReason.ZERO_ENTRY),
        "nonsymmetric": (_reason((ONE, P("1 + q"), M5)), RejectReason.NOT_SYMMETRIC),
        "nonsymmetric solution": (
            _reason((ONE, -monomial(1), P("-2q^2 - 4q - q^-1 - 2"))),
            RejectReason.NOT_SYMMETRIC,
        ),
    }
    bad = [k for k, (got, want) in rejections.items() if got is not want]
    return not wrong and not bad and len(nodes) == 511, f"{len(nodes)} nodes, wrong paths {wrong[:3]}, bad rejections {bad}"


def c8_specializations():
    nodes = squaredtree.generate(8)
    classical = specialize.classical_tree(8)
    for node in nodes:
        x, y, z = specialize.apply(specialize.SpecPoint("q_one"), node.entries)
        if (x + y + z) ** 2 != 9 * x * y * z:
            return False, f"q=1 fails at {node.path}"
        if specialize.spec_qi(node.entries) != classical[node.path]:
            return False, f"q=i differs from the classical tree at {node.path}"
        for k in range(4):
            if not specialize.satisfies_kgm(*specialize.spec_k(node.entries, k), k):
                return False, f"k={k} fails at {node.path}"
        if not specialize.super_positive(specialize.spec_super(node.entries)):
            return False, f"super value not positive at {node.path}"
    root = specialize.spec_super(nodes[0].entries)
    sides = specialize.super_sides(*root)
    ok = root == (DualNumber(1, 0), DualNumber(2, 1), DualNumber(5, 6)) and sides == (DualNumber(30, 81),) * 2
    return ok, f"{len(nodes)} nodes at q=1, q=i, k=0..3, super; root super {tuple(map(str, root))}"


def c9_orbifold():
    chain = mirrortree.orbifold_root_chain()
    u = monomial(1)
    ok = chain[1].entries[1] == u + monomial(-1)
    ok &= chain[2].entries[0] == monomial(-3) + 2 * monomial(-1) + 2 * u
    rep = harness.verify_orbifold(6)
    return ok and rep.ok, f"proof values ok={ok}, {rep}"


def c10_conjectures():
    pos, uniq = harness.verify_conjectures(12)
    a1 = harness.search_a_ell("^^", "blue", 10)
    a2 = harness.search_a_ell("^", "red", 10)
    ok = pos.ok and uniq.ok and a1 == ONE and a2 == 2 * ONE
    return ok, f"{pos}; {uniq}; a_1 = {a1}, a_2 = {a2}"


CRITERIA = [
    (1, "table reproduction", c1_table, 1.0),
    (2, "figure reproduction", c2_figure, 1.0),
    (3, "forbidden mutation", c3_forbidden, None),
    (4, "continued fraction", c4_continued_fraction, 10.0),
    (5, "q-Markov constants", c5_qmarkov, 5.0),
    (6, "factorization sweep", c6_factorization, 60.0),
    (7, "membership round trip", c7_membership, None),
    (8, "specializations", c8_specializations, 30.0),
    (9, "orbifold agreement", c9_orbifold, None),
    (10, "conjecture harness", c10_conjectures, 300.0),
]


def run_criterion(num, name, fn, budget):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    in_time = budget is None or elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    limit = f" (limit {budget:g} s)" if budget is not None else ""
    line = f"{status} criterion {num} [{name}] {elapsed:.2f} s{limit}: {detail}"
    return ok and in_time, line


@pytest.mark.parametrize("num, name, fn, budget", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, budget, capsys):
    ok, line = run_criterion(num, name, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
