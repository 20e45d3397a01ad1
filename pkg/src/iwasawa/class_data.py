"""Class-group data for Z_p-extensions: structures, fixture records and classifiers.

Class groups are ingested from fixture files, never computed.  A fixture is
a UTF-8 JSON array of example records::

    {"p": 3, "label": "d=22", "d": 22, "s": 2,
     "flags": {"single_ramified_prime": true, "totally_ramified": true,
               "p_nmid_class_number_k0": true},
     "levels": [[3, 3], [3, 3, 3, 3]],
     "aux": {"h_primes": [null, 1], "notes": ["..."]},
     "expected": {"mu": 1, "lambda": 0, "nu": {"min": 0}}}

``levels[n]`` lists cyclic factors of the class group of the n-th layer;
only their p-parts matter.  Labels are unique per prime.  Expected values are an int, ``{"min": a}``, ``{"max": b}``,
``{"min": a, "max": b}`` or ``"unknown"``.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import IO, Any, Sequence

from sympy import factorint

from .errors import DomainError, ParseError, ValidationError
from .padic import check_prime, int_valuation


@dataclass(frozen=True)
class AbelianGroupStructure:
    """A finite abelian group as a list of cyclic orders (empty = trivial)."""

    cyclic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(self.cyclic_orders)
        for c in orders:
            if not isinstance(c, int) or isinstance(c, bool) or c < 2:
                raise ValidationError(f"cyclic orders must be integers >= 2, got {c!r}")
        object.__setattr__(self, "cyclic_orders", tuple(sorted(orders, reverse=True)))

    def order(self) -> int:
        out = 1
        for c in self.cyclic_orders:
            out *= c
        return out

    def __str__(self) -> str:
        if not self.cyclic_orders:
            return "1"
        parts = []
        for c in dict.fromkeys(self.cyclic_orders):
            k = self.cyclic_orders.count(c)
            parts.append(str(c) if k == 1 else f"{c}^{k}")
        return "×".join(parts)


def p_exponent(G: AbelianGroupStructure, p: int) -> int:
    """e with p^e exactly dividing #G."""
    return sum(int_valuation(c, p) for c in G.cyclic_orders)


def higher_ambiguous_ranks(G: AbelianGroupStructure, p: int = 2) -> list[int]:
    """2-ranks of the higher ambiguous groups, k = 1, 2, ...

    For p = 2 the k-th rank counts cyclic factors of order divisible by 2^k.
    """
    if p != 2:
        raise DomainError("higher ambiguous ranks have this closed form only for p = 2")
    vals = [int_valuation(c, 2) for c in G.cyclic_orders]
    top = max(vals, default=0)
    return [sum(1 for v in vals if v >= k) for k in range(1, top + 1)]


class RamificationStatus(str, Enum):
    TOTALLY_RAMIFIED = "TotallyRamified"
    UNRAMIFIED = "Unramified"


@dataclass(frozen=True)
class RamificationP3:
    status: RamificationStatus
    v3_disc_K1: int
    v3_disc_K0: int


@dataclass(frozen=True)
class RamificationP2:
    totally_ramified: bool
    single_prime_above_2: bool


def _is_pm1_mod9(x: int) -> bool:
    return x % 9 in (1, 8)


def classify_ramification_p3(d: int) -> RamificationP3:
    """Ramification above 3 in Q(zeta_3, 3^(1/3), d^(1/3)) / Q(zeta_3, d^(1/3)).

    d must be cubefree, not divisible by 9, and not 0, ±1, ±3.
    """
    if abs(d) in (0, 1, 3):
        raise DomainError(f"d={d} does not give a cubic extension distinct from 3^(1/3)")
    if d % 9 == 0:
        raise DomainError(f"9 divides d={d}")
    if any(e >= 3 for e in factorint(abs(d)).values()):
        raise DomainError(f"d={d} is not cubefree")
    three_divides = d % 3 == 0
    if three_divides:
        special = _is_pm1_mod9(d // 3)
    else:
        special = _is_pm1_mod9(d)
    status = (
        RamificationStatus.UNRAMIFIED
        if three_divides and special
        else RamificationStatus.TOTALLY_RAMIFIED
    )
    v_k0 = (3 if _is_pm1_mod9(d) else 7) + (4 if three_divides else 0)
    return RamificationP3(status, 33 if special else 37, v_k0)


def classify_ramification_p2(d: int) -> RamificationP2:
    """Primes above 2 in Q(i, sqrt d) and their ramification in Q(i, sqrt d, sqrt 2)."""
    if d % 2 == 0 or abs(d) <= 1:
        raise DomainError(f"d={d} must be odd with |d| > 1")
    if any(e >= 2 for e in factorint(abs(d)).values()):
        raise DomainError(f"d={d} is not squarefree")
    return RamificationP2(True, d % 8 not in (1, 7))


def check_h_ratio(e_hn: int, e_hn_prime: int, p: int = 3) -> int:
    """e_hn - 2 e_hn_prime: 0 when h_n = (h_n')^2 on p-parts, -1 for h_n = (h_n')^2 / p."""
    check_prime(p)
    return e_hn - 2 * e_hn_prime


def h2_conjecture_applies(d: int) -> bool:
    """d is a product of primes = 2 or 5 mod 9 and d is not ±1 mod 9."""
    primes = factorint(abs(d))
    return bool(primes) and all(q % 9 in (2, 5) for q in primes) and not _is_pm1_mod9(d)


def expected_s(p: int, d: int) -> int:
    """Primes dividing d that are inert in Q(sqrt -3) (p = 3) or Q(i) (p = 2)."""
    primes = factorint(abs(d))
    if p == 3:
        return sum(1 for q in primes if q % 3 == 2)
    if p == 2:
        return sum(1 for q in primes if q % 4 == 3)
    raise DomainError(f"no inertia rule for p={p}")


# -- fixture records ---------------------------------------------------------


@dataclass(frozen=True)
class Flags:
    single_ramified_prime: bool
    totally_ramified: bool
    p_nmid_class_number_k0: bool


@dataclass(frozen=True)
class Expectation:
    """An expected integer: exact, bounded on either side, or unknown."""

    exact: int | None = None
    min: int | None = None
    max: int | None = None

    @property
    def unknown(self) -> bool:
        return self.exact is None and self.min is None and self.max is None

    def contains(self, v: int) -> bool:
        if self.exact is not None:
            return v == self.exact
        if self.min is not None and v < self.min:
            return False
        if self.max is not None and v > self.max:
            return False
        return True

    def to_json(self) -> Any:
        if self.exact is not None:
            return self.exact
        if self.unknown:
            return "unknown"
        return {k: v for k, v in (("min", self.min), ("max", self.max)) if v is not None}


@dataclass(frozen=True)
class Expected:
    mu: Expectation = field(default_factory=Expectation)
    lambda_: Expectation = field(default_factory=Expectation)
    nu: Expectation = field(default_factory=Expectation)

    def items(self):
        return (("mu", self.mu), ("lambda", self.lambda_), ("nu", self.nu))


@dataclass(frozen=True)
class ConditionalLevel:
    n: int
    min: int | None
    max: int | None


@dataclass(frozen=True)
class Conditional:
    """Hypothetical layer data that hold only under an unproved hypothesis."""

    hypothesis: str
    levels: tuple[ConditionalLevel, ...]
    expected: Expected | None = None


@dataclass(frozen=True)
class Aux:
    h_primes: tuple[int | None, ...] = ()
    unit_index_maximal: bool | None = None
    conditional: Conditional | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExampleRecord:
    p: int
    label: str
    s: int
    flags: Flags
    levels: tuple[AbelianGroupStructure, ...]
    d: int | None = None
    aux: Aux | None = None
    expected: Expected | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        validate_record(self)

    @property
    def e(self) -> list[int]:
        return [p_exponent(G, self.p) for G in self.levels]


def validate_record(rec: ExampleRecord) -> None:
    where = f"record {rec.label!r}"
    try:
        check_prime(rec.p)
    except DomainError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    if not rec.levels:
        raise ValidationError(f"{where}: levels must be nonempty")
    if rec.s < 0:
        raise ValidationError(f"{where}: s must be nonnegative")
    if rec.d is not None and rec.p in (2, 3):
        want = expected_s(rec.p, rec.d)
        if want != rec.s:
            raise ValidationError(f"{where}: s={rec.s} but d={rec.d} gives s={want}")
    if rec.aux is not None:
        if any(h is not None and h < 0 for h in rec.aux.h_primes):
            raise ValidationError(f"{where}: h_primes entries must be >= 0")
        cond = rec.aux.conditional
        if cond is not None:
            for lv in cond.levels:
                if lv.n < len(rec.levels):
                    raise ValidationError(
                        f"{where}: conditional level {lv.n} overlaps known levels"
                    )
                if lv.min is None and lv.max is None:
                    raise ValidationError(f"{where}: conditional level {lv.n} has no bound")
                if lv.min is not None and lv.max is not None and lv.min > lv.max:
                    raise ValidationError(f"{where}: conditional level {lv.n} is empty")


_RECORD_KEYS = {"p", "label", "d", "s", "flags", "levels", "aux", "expected"}
_REQUIRED_KEYS = {"p", "label", "s", "flags", "levels"}
_FLAG_KEYS = ("single_ramified_prime", "totally_ramified", "p_nmid_class_number_k0")
_AUX_KEYS = {"h_primes", "unit_index_maximal", "conditional", "notes"}


def _obj(node: Any, path: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(node, dict):
        raise ParseError(path, f"expected an object, got {type(node).__name__}")
    extra = sorted(set(node) - allowed)
    if extra:
        raise ParseError(f"{path}.{extra[0]}", "unknown key")
    missing = sorted(set(required) - set(node))
    if missing:
        raise ParseError(f"{path}.{missing[0]}", "missing required key")
    return node


def _int(node: Any, path: str) -> int:
    if not isinstance(node, int) or isinstance(node, bool):
        raise ParseError(path, f"expected an integer, got {node!r}")
    return node


def _bool(node: Any, path: str) -> bool:
    if not isinstance(node, bool):
        raise ParseError(path, f"expected a boolean, got {node!r}")
    return node


def _list(node: Any, path: str) -> list:
    if not isinstance(node, list):
        raise ParseError(path, f"expected an array, got {type(node).__name__}")
    return node


def _str(node: Any, path: str) -> str:
    if not isinstance(node, str):
        raise ParseError(path, f"expected a string, got {node!r}")
    return node


def _expectation(node: Any, path: str) -> Expectation:
    if node == "unknown":
        return Expectation()
    if isinstance(node, dict):
        _obj(node, path, {"min", "max"})
        if not node:
            raise ParseError(path, "bound needs min and/or max")
        lo = _int(node["min"], f"{path}.min") if "min" in node else None
        hi = _int(node["max"], f"{path}.max") if "max" in node else None
        return Expectation(min=lo, max=hi)
    return Expectation(exact=_int(node, path))


def _expected(node: Any, path: str) -> Expected:
    _obj(node, path, {"mu", "lambda", "nu"})
    return Expected(
        mu=_expectation(node.get("mu", "unknown"), f"{path}.mu"),
        lambda_=_expectation(node.get("lambda", "unknown"), f"{path}.lambda"),
        nu=_expectation(node.get("nu", "unknown"), f"{path}.nu"),
    )


def _conditional(node: Any, path: str) -> Conditional:
    _obj(node, path, {"hypothesis", "levels", "expected"}, {"hypothesis", "levels"})
    levels = []
    for i, lv in enumerate(_list(node["levels"], f"{path}.levels")):
        lp = f"{path}.levels[{i}]"
        _obj(lv, lp, {"n", "min", "max"}, {"n"})
        levels.append(
            ConditionalLevel(
                _int(lv["n"], f"{lp}.n"),
                _int(lv["min"], f"{lp}.min") if "min" in lv else None,
                _int(lv["max"], f"{lp}.max") if "max" in lv else None,
            )
        )
    expected = _expected(node["expected"], f"{path}.expected") if "expected" in node else None
    return Conditional(_str(node["hypothesis"], f"{path}.hypothesis"), tuple(levels), expected)


def _aux(node: Any, path: str) -> Aux:
    _obj(node, path, _AUX_KEYS)
    h_primes = tuple(
        None if h is None else _int(h, f"{path}.h_primes[{i}]")
        for i, h in enumerate(_list(node.get("h_primes", []), f"{path}.h_primes"))
    )
    uim = node.get("unit_index_maximal")
    return Aux(
        h_primes=h_primes,
        unit_index_maximal=None if uim is None else _bool(uim, f"{path}.unit_index_maximal"),
        conditional=(
            _conditional(node["conditional"], f"{path}.conditional")
            if "conditional" in node
            else None
        ),
        notes=tuple(
            _str(x, f"{path}.notes[{i}]")
            for i, x in enumerate(_list(node.get("notes", []), f"{path}.notes"))
        ),
    )


def _record(node: Any, path: str) -> ExampleRecord:
    _obj(node, path, _RECORD_KEYS, _REQUIRED_KEYS)
    flags_node = _obj(node["flags"], f"{path}.flags", set(_FLAG_KEYS), set(_FLAG_KEYS))
    flags = Flags(*(_bool(flags_node[k], f"{path}.flags.{k}") for k in _FLAG_KEYS))
    levels = []
    for n, lv in enumerate(_list(node["levels"], f"{path}.levels")):
        orders = [_int(c, f"{path}.levels[{n}][{i}]") for i, c in enumerate(_list(lv, f"{path}.levels[{n}]"))]
        levels.append(AbelianGroupStructure(tuple(orders)))
    return ExampleRecord(
        p=_int(node["p"], f"{path}.p"),
        label=_str(node["label"], f"{path}.label"),
        s=_int(node["s"], f"{path}.s"),
        flags=flags,
        levels=tuple(levels),
        d=_int(node["d"], f"{path}.d") if "d" in node else None,
        aux=_aux(node["aux"], f"{path}.aux") if "aux" in node else None,
        expected=_expected(node["expected"], f"{path}.expected") if "expected" in node else None,
    )


def load_fixtures(source: bytes | str | IO[bytes]) -> list[ExampleRecord]:
    """Parse and validate a fixture document.

    Raises ParseError (with a path) for schema violations and
    ValidationError for records that break an invariant.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("$", f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON: {exc}") from None
    records = []
    labels = set()
    for i, node in enumerate(_list(doc, "$")):
        rec = _record(node, f"$[{i}]")
        if (rec.p, rec.label) in labels:
            raise ValidationError(f"duplicate label {rec.label!r} for p={rec.p}")
        labels.add((rec.p, rec.label))
        records.append(rec)
    return records


def load_fixture_file(path: str | Path) -> list[ExampleRecord]:
    with open(path, "rb") as fh:
        return load_fixtures(fh)


def shipped_fixture_path() -> Path:
    return Path(str(resources.files("iwasawa") / "data" / "paper_examples.json"))


def load_shipped_fixtures() -> list[ExampleRecord]:
    return load_fixture_file(shipped_fixture_path())


def find(records: Sequence[ExampleRecord], label: str, p: int | None = None) -> ExampleRecord:
    for rec in records:
        if rec.label == label and (p is None or rec.p == p):
            return rec
    raise KeyError(label)
