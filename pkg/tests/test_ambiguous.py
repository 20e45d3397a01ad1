import pytest

from iwasawa.ambiguous import (
    ChevalleyInput,
    ambiguous_count,
    en_lower_bound,
    mu_lower_from_s,
    strong_ambiguous_bounds,
    strong_ambiguous_count,
)
from iwasawa.errors import DomainError, InconsistentInput
from iwasawa.padic import int_valuation


def test_chevalley_examples():
    assert ambiguous_count(ChevalleyInput(1, 2, (2,), 1)) == 1
    assert ambiguous_count(ChevalleyInput(1, 3, (3, 3), 3)) == 1
    assert ambiguous_count(ChevalleyInput(4, 2, (2, 2), 2)) == 4


def test_chevalley_rejects_impossible_data():
    with pytest.raises(InconsistentInput):
        ambiguous_count(ChevalleyInput(1, 3, (3,), 3))
    with pytest.raises(DomainError):
        ChevalleyInput(1, 4, (3,), 1)
    with pytest.raises(DomainError):
        ChevalleyInput(0, 2, (2,), 1)


def test_layer_floor():
    # s p^n ramified primes of index p and the largest unit index p^(p^n)
    for p in (2, 3, 5):
        for s in (2, 3):
            for n in range(4):
                ram = (p,) * (s * p**n)
                count = ambiguous_count(ChevalleyInput(1, p, ram, p ** (p**n)))
                assert int_valuation(count, p) == en_lower_bound(s, p, n)
                assert strong_ambiguous_count(p, ram, p ** (p**n)) == en_lower_bound(s, p, n)


def test_bounds():
    assert mu_lower_from_s(0) == 0
    assert mu_lower_from_s(4) == 3
    assert en_lower_bound(1, 3, 2) == 0
    assert en_lower_bound(3, 2, 2) == 7
    assert strong_ambiguous_bounds(2, 3, 1) == (2, 5)
    with pytest.raises(DomainError):
        en_lower_bound(0, 3, 1)
