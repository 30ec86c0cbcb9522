import math

import pytest

from mirror_markov.errors import InternalInconsistency, NonRealValue, OutOfRange
from mirror_markov.polyring import ONE, DualNumber, monomial, parse_poly
from mirror_markov.specialize import (
    SpecPoint,
    apply,
    classical_tree,
    kgm_mutate,
    parse_spec,
    spec_k,
    spec_qi,
    spec_root_of_unity,
    spec_super,
    super_positive,
    super_sides,
)
from mirror_markov.squaredtree import M2, M5, generate, mutate, node_at

ROOT = (ONE, M2, M5)
M13 = parse_poly("4q^-3 + 18q^-2 + 38q^-1 + 49 + 38q + 18q^2 + 4q^3")


@pytest.fixture(scope="module")
def tree6():
    return generate(6)


def test_k_values():
    assert spec_k(ROOT, 2) == (1, 4, 25)
    assert spec_k(ROOT, 1) == (1, 3, 13)
    assert spec_k(ROOT, 0) == (1, 2, 5)
    # 1 + 9 + 169 + (3 + 13 + 39) = 234 = 6 * 39
    assert 1 + 9 + 169 + 55 == 6 * 39


def test_negative_k_needs_flag():
    with pytest.raises(OutOfRange):
        spec_k(ROOT, -1)
    assert spec_k(ROOT, -1, allow_degenerate=True) == (1, 1, 1)


def test_q_one_squares(tree6):
    for node in tree6:
        x, y, z = apply(SpecPoint("q_one"), node.entries)
        assert (x + y + z) ** 2 == 9 * x * y * z
        assert all(math.isqrt(v) ** 2 == v for v in (x, y, z))


def test_gaussian_point():
    assert spec_qi((ONE, M5, M13)) == (1, 5, 13)
    with pytest.raises(NonRealValue):
        spec_qi((ONE, ONE, 1 + monomial(1)))


def test_classical_tree_reproduced(tree6):
    classical = classical_tree(6)
    for node in tree6:
        assert spec_qi(node.entries) == classical[node.path]


def test_classical_oracle_is_markov():
    for t in classical_tree(5).values():
        x, y, z = t
        assert x * x + y * y + z * z == 3 * x * y * z


def test_super_root():
    vals = spec_super(ROOT)
    assert vals == (DualNumber(1, 0), DualNumber(2, 1), DualNumber(5, 6))
    lhs, rhs = super_sides(*vals)
    assert lhs == rhs == DualNumber(30, 81)
    assert spec_super((ONE, ONE, ONE)) == (DualNumber(1, 0),) * 3


def test_super_sweep(tree6):
    for node in tree6:
        vals = spec_super(node.entries)
        assert super_positive(vals)
        assert vals[2].eps > 0


def test_super_eps_parts_are_not_all_even():
    assert spec_super(node_at("LL").entries)[2] == DualNumber(34, 97)


def test_roots_of_unity(tree6):
    assert spec_root_of_unity(ROOT, 3) < 1e-9
    assert spec_root_of_unity((ONE, ONE, ONE), 7) < 1e-12
    for node in tree6[:63]:
        spec_root_of_unity(node.entries, 5, 1e-6)


def test_root_of_unity_detects_non_solution():
    with pytest.raises(InternalInconsistency):
        spec_root_of_unity((ONE, ONE, 2 * ONE), 4)


def test_mutation_commutes_with_k(tree6):
    for node in tree6[:31]:
        for i in range(3):
            for k in range(4):
                assert spec_k(mutate(node, i), k) == kgm_mutate(spec_k(node, k), i, k)


def test_parse_spec():
    assert parse_spec("k=3") == SpecPoint("k", 3)
    assert parse_spec("q=1") == SpecPoint("q_one")
    assert parse_spec("q=i") == SpecPoint("q_i")
    assert parse_spec("super") == SpecPoint("super")
    assert parse_spec("cos:5") == SpecPoint("root", 5)
    assert str(parse_spec("cos:5")) == "cos:5"
    for bad in ("cos:2", "z=3"):
        with pytest.raises((ValueError, OutOfRange)):
            parse_spec(bad)


def test_apply_on_tree_node():
    node = node_at("RL")
    assert apply(parse_spec("q=i"), node.entries) == (2, 29, 169)
