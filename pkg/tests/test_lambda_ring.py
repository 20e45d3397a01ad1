import pytest
from hypothesis import assume, given, settings, strategies as st

from iwasawa.errors import DomainError, StructuralError
from iwasawa.lambda_ring import (
    IndeterminateAtPrecision,
    LambdaPoly,
    cyclotomic_factor,
    determinant_valuation,
    ideal_index,
    is_distinguished,
    nu,
    nu_mod,
    omega,
    parse_poly,
    weierstrass_divide,
)
from oracles import nu_coeffs, resultant_index

N = 64


def P(text, p, precision=N):
    return LambdaPoly.parse(text, p, precision)


def test_omega_and_nu():
    assert omega(2, N, 1) == P("T^2 + 2T", 2)
    assert nu(2, N, 2) == P("T^3 + 4T^2 + 6T + 4", 2)
    assert nu(3, N, 1) == P("T^2 + 3T + 3", 3)
    assert nu(5, N, 0) == P("1", 5)
    for p in (2, 3, 5):
        for n in range(4):
            assert list(nu(p, N, n).residues) == nu_coeffs(p, n)


def test_parse_and_print():
    assert parse_poly("T^2 - 2T + 3") == [3, -2, 1]
    assert parse_poly("3 + T") == [3, 1]
    assert parse_poly("-T^3") == [0, 0, 0, -1]
    assert str(P("T^2 - 2T + 3", 5)) == "T^2 - 2T + 3"
    assert str(P("0", 3)) == "0"
    with pytest.raises(DomainError):
        parse_poly("T^2 3T")


def test_distinguished():
    assert is_distinguished(P("T^2 + 3T + 3", 3))
    assert not is_distinguished(P("T^2 + T + 3", 3))
    assert not is_distinguished(P("2T^2 + 3", 3))
    assert is_distinguished(P("1", 3))
    with pytest.raises(StructuralError):
        is_distinguished(P("0", 3))


def test_weierstrass_divide():
    f = P("T^4 + 5T + 7", 3)
    d = P("T^2 + 3T + 3", 3)
    q, r = weierstrass_divide(f, d)
    assert d * q + r == f
    assert r.degree < d.degree
    with pytest.raises(DomainError):
        weierstrass_divide(f, P("T^2 + 1", 3))


def test_mixed_rings():
    with pytest.raises(StructuralError):
        P("T", 3) + P("T", 5)
    with pytest.raises(StructuralError):
        P("T", 3, 10) * P("T", 3, 11)


def test_cyclotomic_factors_multiply_to_nu():
    for p in (2, 3):
        acc = P("1", p)
        for k in range(1, 4):
            acc = acc * cyclotomic_factor(p, N, k)
            assert acc == nu(p, N, k)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(-20, 20), min_size=1, max_size=4),
    st.integers(0, 4),
)
def test_nu_mod_matches_division(p, lower, n):
    f = LambdaPoly.from_ints([p * c for c in lower] + [1], p, N)
    assume(p**n <= 130)
    assert nu_mod(f, n) == weierstrass_divide(nu(p, N, n), f)[1]


def test_ideal_index_examples():
    # Lambda/(T^2 + 3T + 3, T) = Z_3/(3)
    assert ideal_index(P("T^2 + 3T + 3", 3), P("T", 3)) == 1
    assert ideal_index(P("1", 3), P("T", 3)) == 0
    assert ideal_index(P("T + 2", 2), nu_mod(P("T + 2", 2), 1)) == IndeterminateAtPrecision(N)


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(-6, 6), min_size=1, max_size=3),
    st.lists(st.integers(-30, 30), min_size=1, max_size=4),
)
def test_ideal_index_matches_resultant(p, lower, g):
    f = [p * c for c in lower] + [1]
    expected = resultant_index(f, g, p)
    got = ideal_index(LambdaPoly.from_ints(f, p, N), LambdaPoly.from_ints(g, p, N))
    if expected is None:
        assert isinstance(got, IndeterminateAtPrecision)
    else:
        assert got == expected


def test_determinant_exact_past_precision():
    # diag(p^3, p^3) at N = 4: each pivot is nonzero, so v = 6 is exact
    assert determinant_valuation([[8, 0], [0, 8]], 2, 4) == 6
    assert determinant_valuation([[0, 0], [0, 16]], 2, 4) == IndeterminateAtPrecision(4)


def test_with_precision_lifts():
    f = P("T^2 - 3", 3, 4)
    g = f.with_precision(8)
    assert g.precision == 8
    assert g.with_precision(4) == f
    assert all(a % 3**4 == b for a, b in zip(g.residues, f.residues))
