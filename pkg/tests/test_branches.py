import pytest
from hypothesis import given
from hypothesis import strategies as st

from mirror_markov import mirrortree
from mirror_markov.branches import (
    FIBONACCI,
    PELL,
    branch,
    fib,
    mirror_identities,
    pell,
    qmarkov_fib,
    qmarkov_pell,
    ratio_cf,
    verify_ratio_cf,
)
from mirror_markov.errors import NotConstant
from mirror_markov.polyring import ONE, Q3, evaluate, is_positive, monomial, parse_poly

P = parse_poly


def fibonacci(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def pell_number(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, 2 * b + a
    return a


def test_figure_values():
    assert fib(4) == P("2 + 7q + 11q^2 + 10q^3 + 4q^4")
    assert fib(5) == P("4 + 14q + 25q^2 + 26q^3 + 16q^4 + 4q^5")
    assert pell(2) == P("3 + 8q + 10q^2 + 6q^3 + 2q^4")
    assert pell(3) == P("3 + 14q + 34q^2 + 48q^3 + 42q^4 + 22q^5 + 6q^6")
    assert pell(4) == P("9 + 48q + 130q^2 + 218q^3 + 246q^4 + 192q^5 + 102q^6 + 34q^7 + 6q^8")


def test_seeds():
    assert branch(FIBONACCI, 1).terms == (ONE, P("1 + q"))
    assert branch(PELL, 1).terms == (ONE, P("1 + 2q + 2q^2"))
    assert branch(PELL, 0).terms == (ONE,)


def test_values_at_one_and_degrees():
    for n in range(25):
        f, p = fib(n), pell(n)
        assert evaluate(f, 1) == fibonacci(2 * n + 1)
        assert evaluate(p, 1) == pell_number(2 * n + 1)
        assert f.degree == n and p.degree == 2 * n
        assert is_positive(f) and is_positive(p)


def test_branches_sit_in_the_mirror_tree():
    for n in range(2, 9):
        assert mirrortree.node_at("L" * (n - 2)).maximum == fib(n)
        assert mirrortree.node_at("R" + "L" * (n - 2)).maximum == pell(n)


def test_qmarkov_constants():
    assert qmarkov_fib(1) == Q3
    assert qmarkov_pell(1) == Q3
    for n in range(1, 31):
        assert qmarkov_fib(n) == Q3
        assert qmarkov_pell(n) == Q3


def test_qmarkov_needs_positive_n():
    with pytest.raises(ValueError):
        qmarkov_fib(0)


def test_not_constant_is_raised(monkeypatch):
    import mirror_markov.branches as br

    monkeypatch.setattr(br, "Q3", monomial(3))
    with pytest.raises(NotConstant):
        br.qmarkov_fib(2)


def test_mirror_identities():
    for n in range(1, 31):
        assert mirror_identities(n).ok


def test_ratio_cf_base_cases():
    q = monomial(1)
    assert ratio_cf(FIBONACCI, 1).entries == (1 + q, monomial(-2) * (1 + q))
    assert ratio_cf(PELL, 1).entries == (P("1 + 2q + 2q^2"), ONE, (1 + q) * (1 + q))
    assert len(ratio_cf(PELL, 5)) == 11


def test_ratio_cf_periodic_part():
    q = monomial(1)
    entries = ratio_cf(FIBONACCI, 4).entries
    assert entries[1:7] == (monomial(-2), q, ONE, q, monomial(-2), q)
    assert entries[-1] == monomial(-1) * (1 + q)


def test_ratio_cf_sweep():
    for n in range(1, 16):
        assert verify_ratio_cf(FIBONACCI, n)
        assert verify_ratio_cf(PELL, n)


def test_unknown_branch():
    with pytest.raises(ValueError):
        branch("lucas", 3)


@given(st.integers(1, 40))
def test_recurrence_coefficients_positive(n):
    b = branch(FIBONACCI, n)
    assert b.squared[n] == mirrortree.squared_of(b.terms[n])
    assert all(c > 0 for c in b.terms[n].coeffs)
