import pytest
from hypothesis import given
from hypothesis import strategies as st

from mirror_markov.errors import AmbiguousMax, Rejected, RejectReason
from mirror_markov.polyring import ONE, ZERO, Q, S, evaluate, involute, is_positive, is_symmetric, parse_poly
from mirror_markov.squaredtree import (
    CHAIN,
    M2,
    M5,
    ROOT,
    check_equation,
    descend,
    generate,
    is_degree_singular,
    iter_levels,
    max_of,
    mutate,
    node_at,
    root_chain,
)

M13 = parse_poly("4q^-3 + 18q^-2 + 38q^-1 + 49 + 38q + 18q^2 + 4q^3")
M29 = parse_poly("6q^-4 + 34q^-3 + 98q^-2 + 176q^-1 + 213 + 176q + 98q^2 + 34q^3 + 6q^4")


@pytest.fixture(scope="module")
def tree6():
    return generate(6)


def test_equation_examples():
    assert check_equation(ONE, ONE, ONE)
    assert check_equation(ONE, ONE, M2)
    assert not check_equation(ONE, ONE, 2 * ONE)


def test_m2_is_one_plus_q_squared():
    assert M2 == (1 + Q) * (1 + involute(Q))


def test_mutating_root():
    for i in range(3):
        out = mutate((ONE, ONE, ONE), i)
        assert sorted(out.entries, key=lambda p: p.degree) == [ONE, ONE, M2]


def test_mutation_to_m13_and_m29():
    # classically (1, 2, 5): replacing 2 gives 13, replacing 1 gives 29
    assert mutate((ONE, M2, M5), 1)[1] == M13
    assert mutate((ONE, M2, M5), 0)[0] == M29


def test_double_mutation_is_identity():
    t = (ONE, M2, M5)
    for i in range(3):
        assert mutate(mutate(t, i), i).entries == t


def test_generate_shallow():
    assert [n.entries for n in generate(0)] == [(ONE, M2, M5)]
    d1 = generate(1)
    assert [n.path for n in d1] == ["", "L", "R"]
    assert d1[1].maximum == M13 and d1[2].maximum == M29


def test_root_chain():
    chain = root_chain()
    assert [n.path for n in chain] == [ROOT, CHAIN, ""]
    assert all(check_equation(*n.entries) for n in chain)


def test_sweep_equation_and_shape(tree6):
    assert len(tree6) == 2**7 - 1
    for node in tree6:
        assert check_equation(*node.entries)
        assert all(is_symmetric(p) and is_positive(p) for p in node.entries)
        vals = [evaluate(p, 1) for p in node.entries]
        assert vals == sorted(vals)


def test_generation_with_division_cross_check():
    # raises InternalInconsistency if the two mutation forms ever disagree
    assert len([n for level in iter_levels(5, verify=True) for n in level]) == 63


def test_degree_singularity():
    assert is_degree_singular((ONE, ONE, ONE))
    assert not is_degree_singular((ONE, M2, M5))
    assert max_of((ONE, M2, M5)) == M5
    with pytest.raises(AmbiguousMax):
        max_of((ONE, M2, M2))


def test_unique_max_and_degree_growth(tree6):
    by_path = {n.path: n for n in tree6}
    for node in tree6:
        m = max_of(node.entries)
        assert m == node.maximum
        if node.path:
            parent = by_path[node.path[:-1]]
            assert m.degree > parent.maximum.degree


def test_descend_chain():
    assert descend(ONE, M2, M5) == ""
    assert descend(ONE, ONE, M2) == CHAIN
    assert descend(ONE, ONE, ONE) == ROOT


def test_descend_round_trip(tree6):
    for node in tree6:
        x, y, z = node.entries
        assert descend(z, x, y) == node.path


@pytest.mark.parametrize(
    "triple, reason",
    [
        ((ONE, -Q, ZERO), RejectReason.ZERO_ENTRY),
        ((ONE, ONE, 2 * ONE), RejectReason.NOT_A_SOLUTION),
        ((ONE, 1 + Q, M5), RejectReason.NOT_SYMMETRIC),
        ((ONE, ONE, S), RejectReason.NOT_A_SOLUTION),
    ],
)
def test_descend_rejections(triple, reason):
    with pytest.raises(Rejected) as info:
        descend(*triple)
    assert info.value.reason is reason


def test_nonsymmetric_solution_rejected():
    # solves the equation but is not symmetric
    z = parse_poly("-2q^2 - 4q - q^-1 - 2")
    assert check_equation(ONE, -Q, z)
    with pytest.raises(Rejected) as info:
        descend(ONE, -Q, z)
    assert info.value.reason is RejectReason.NOT_SYMMETRIC


def test_descend_from_unsorted_chain_node():
    t = mutate((ONE, M2, M5), 2)  # back up to (1, M2, 1)
    assert descend(*t.entries) == CHAIN


@given(st.text(alphabet="LR", max_size=5))
def test_node_at_matches_descend(path):
    node = node_at(path)
    assert descend(*node.entries) == path
