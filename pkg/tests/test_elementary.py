import pytest
from hypothesis import given, settings, strategies as st

from iwasawa.elementary import (
    INFINITE,
    ElementaryModule,
    bound_is_quoted,
    invariants,
    lambdathm_lower_bound,
    p_torsion_order_nu,
    quotient_order_nu,
    shares_factor_with_nu,
    summand_index,
)
from iwasawa.errors import DomainError
from iwasawa.lambda_ring import LambdaPoly, nu
from oracles import quotient_p_exponent


def test_invariants():
    E = ElementaryModule.build(3, [1, 2], ["T^2 + 3T + 3", "T - 3"])
    assert invariants(E) == (3, 3)
    assert E.invariants() == (3, 3)
    assert invariants(ElementaryModule(5)) == (0, 0)


def test_rejects_non_distinguished():
    with pytest.raises(DomainError):
        ElementaryModule.build(3, [], ["T^2 + T + 3"])
    with pytest.raises(DomainError):
        ElementaryModule.build(3, [0])


def test_mu_part_quotient():
    assert quotient_order_nu(ElementaryModule.build(3, [1]), 1) == 2
    assert quotient_order_nu(ElementaryModule.build(3, [1]), 2) == 8
    assert quotient_order_nu(ElementaryModule.build(2, [2, 1]), 3) == 21


def test_infinite_quotients():
    E = ElementaryModule.build(3, [], ["T^2 + 3T + 3"])
    assert quotient_order_nu(E, 0) == 0
    assert quotient_order_nu(E, 1) is INFINITE
    # nu_1 times a coprime factor is still caught
    f = nu(2, 64, 1) * LambdaPoly.parse("T - 2", 2)
    assert shares_factor_with_nu(f, 1)
    assert summand_index(f, 1) is INFINITE
    assert summand_index(f, 0) == 0


def test_precision_escalation():
    # at precision 3 the index of (T^3 + 4, nu_2) is invisible; it is 5
    f = LambdaPoly.from_ints([4, 0, 0, 1], 2, 3)
    assert not shares_factor_with_nu(f, 2)
    assert summand_index(f, 2) == 5
    assert quotient_order_nu(ElementaryModule(2, 3, (1,), (f,)), 2) == 3 + 5


def test_p_torsion_formula():
    E = ElementaryModule.build(3, [1, 2], ["T - 3"])
    assert p_torsion_order_nu(E, 1) == 2 * 2 + 1
    with pytest.raises(DomainError):
        p_torsion_order_nu(ElementaryModule.build(2, [], ["T^2 + 2"]), 1)


def test_lambdathm_bounds():
    assert lambdathm_lower_bound(3, 2, 1) == 2
    assert lambdathm_lower_bound(5, 2, 1) == 2
    assert lambdathm_lower_bound(5, 9, 1) == 4
    assert [lambdathm_lower_bound(2, L, 2) for L in range(6)] == [0, 2, 4, 3, 3, 3]
    with pytest.raises(DomainError):
        lambdathm_lower_bound(3, 2, 2)
    assert not bound_is_quoted(2, 1, 2)
    assert bound_is_quoted(2, 2, 2)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3),
    st.integers(1, 2),
)
def test_summand_index_matches_snf(p, lower, n):
    f = [p * c for c in lower] + [1]
    F = LambdaPoly.from_ints(f, p, 64)
    got = summand_index(F, n)
    expected = quotient_p_exponent([f, [int(x) for x in nu(p, 64, n).residues]], p)
    if got is INFINITE:
        assert expected is None
    else:
        assert got == expected


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.lists(st.integers(1, 2), max_size=2),
    st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=3), max_size=2),
)
def test_lambdathm_bound_holds(p, exps, polys):
    E = ElementaryModule(
        p, 64, (), tuple(LambdaPoly.from_ints([p * c for c in f] + [1], p, 64) for f in polys)
    )
    lam = invariants(E)[1]
    levels = [1, 2] if p == 2 else [1]
    for n in levels:
        v = quotient_order_nu(E, n)
        if v is not INFINITE:
            assert v >= lambdathm_lower_bound(p, lam, n)
