import io
import json

import pytest
from hypothesis import given, strategies as st

from iwasawa.class_data import (
    AbelianGroupStructure,
    RamificationStatus,
    check_h_ratio,
    classify_ramification_p2,
    classify_ramification_p3,
    expected_s,
    find,
    h2_conjecture_applies,
    higher_ambiguous_ranks,
    load_fixtures,
    load_shipped_fixtures,
    p_exponent,
)
from iwasawa.errors import DomainError, ParseError, ValidationError

G = AbelianGroupStructure


def minimal(**over):
    rec = {
        "p": 3,
        "label": "d=22",
        "d": 22,
        "s": 2,
        "flags": {
            "single_ramified_prime": True,
            "totally_ramified": True,
            "p_nmid_class_number_k0": True,
        },
        "levels": [[3, 3], [3, 3, 3, 3]],
    }
    rec.update(over)
    return rec


def load(*records):
    return load_fixtures(json.dumps(list(records)).encode())


def test_group_structure():
    g = G((3, 27, 9, 3))
    assert g.cyclic_orders == (27, 9, 3, 3)
    assert str(g) == "27×9×3^2"
    assert str(G(())) == "1"
    assert g.order() == 27 * 9 * 9
    with pytest.raises(ValidationError):
        G((1,))


def test_p_exponent():
    assert p_exponent(G((12, 2)), 2) == 3
    assert p_exponent(G((27, 9, 9) + (3,) * 7), 3) == 14
    assert p_exponent(G(()), 5) == 0
    assert p_exponent(G((12, 2)), 3) == 1


@given(st.lists(st.integers(2, 500), max_size=6), st.lists(st.integers(2, 500), max_size=6))
def test_p_exponent_additive(a, b):
    for p in (2, 3):
        assert p_exponent(G(tuple(a + b)), p) == p_exponent(G(tuple(a)), p) + p_exponent(
            G(tuple(b)), p
        )


def test_higher_ambiguous_ranks():
    assert higher_ambiguous_ranks(G((16, 8, 2))) == [3, 2, 2, 1]
    assert higher_ambiguous_ranks(G((2,))) == [1]
    assert higher_ambiguous_ranks(G(())) == []
    with pytest.raises(DomainError):
        higher_ambiguous_ranks(G((9,)), 3)


def test_ramification_p3():
    r = classify_ramification_p3(22)
    assert r.status is RamificationStatus.TOTALLY_RAMIFIED and r.v3_disc_K1 == 37
    assert r.v3_disc_K0 == 7
    assert classify_ramification_p3(51).status is RamificationStatus.UNRAMIFIED
    r = classify_ramification_p3(10)
    assert r.status is RamificationStatus.TOTALLY_RAMIFIED and r.v3_disc_K1 == 33
    assert r.v3_disc_K0 == 3
    assert classify_ramification_p3(6).v3_disc_K0 == 11
    for bad in (1, 3, 9, 18, 16, 0):
        with pytest.raises(DomainError):
            classify_ramification_p3(bad)


def test_ramification_p2():
    assert classify_ramification_p2(21).single_prime_above_2
    assert not classify_ramification_p2(33).single_prime_above_2
    assert classify_ramification_p2(627).single_prime_above_2
    for bad in (4, 9, 1):
        with pytest.raises(DomainError):
            classify_ramification_p2(bad)


def test_h_ratio_and_conjecture_scope():
    assert check_h_ratio(2, 1) == 0
    assert check_h_ratio(3, 2) == -1
    assert check_h_ratio(13, 6) == 1
    assert h2_conjecture_applies(22) is True
    assert h2_conjecture_applies(10) is False  # 10 = 1 mod 9
    assert h2_conjecture_applies(2 * 5 * 11) is True
    assert h2_conjecture_applies(17) is False


def test_expected_s():
    assert expected_s(3, 1870) == 4
    assert expected_s(2, 3 * 7 * 11) == 3
    assert expected_s(2, 33) == 2


def test_loader_roundtrip():
    (rec,) = load(minimal())
    assert rec.e == [2, 4]
    assert rec.flags.single_ramified_prime
    assert load_fixtures(b"[]") == []
    assert load_fixtures(io.BytesIO(b"[]")) == []


def test_loader_errors():
    with pytest.raises(ParseError) as exc:
        load(minimal(extra=1))
    assert exc.value.path == "$[0].extra"
    with pytest.raises(ParseError) as exc:
        load(minimal(levels=[[3, "x"]]))
    assert exc.value.path == "$[0].levels[0][1]"
    with pytest.raises(ParseError):
        load(minimal(expected={"mu": {"low": 1}}))
    with pytest.raises(ParseError):
        load_fixtures(b"{not json")
    with pytest.raises(ValidationError):
        load(minimal(levels=[[1]]))
    with pytest.raises(ValidationError):
        load(minimal(levels=[]))
    with pytest.raises(ValidationError):
        load(minimal(s=3))
    with pytest.raises(ValidationError):
        load(minimal(), minimal())
    # the same label under another prime is a different record
    assert len(load(minimal(), minimal(p=2, d=21, levels=[[2]]))) == 2


def test_shipped_fixtures():
    recs = load_shipped_fixtures()
    assert len(recs) >= 30
    labels = {r.label for r in recs}
    for want in ("d=22", "d=1870", "d=5·11·173", "d=3·11·19", "q=7", "q=79", "q=827"):
        assert want in labels
    assert find(recs, "d=1870").e == [6, 13]
    assert find(recs, "q=71", p=2).e == [0, 1, 1]
    assert find(recs, "q=71", p=3).e == [0, 3]
    for r in recs:
        if r.d is not None:
            assert r.s == expected_s(r.p, r.d)
            if r.p == 2:
                assert r.flags.single_ramified_prime == classify_ramification_p2(r.d).single_prime_above_2
