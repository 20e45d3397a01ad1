"""Polynomial elements of the Iwasawa algebra Z_p[[T]] at precision p^N.

Every element needed here (omega_n, nu_n, distinguished polynomials and
their remainders) is a polynomial, so power series never appear.  Indices
of ideals (f, g) with f distinguished are read off from the determinant of
multiplication by g on Z_p[T]/(f) in the basis 1, T, ..., T^(deg f - 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, StructuralError
from .padic import DEFAULT_PRECISION, PadicScalar, check_prime, int_valuation


@dataclass(frozen=True)
class IndeterminateAtPrecision:
    """A determinant that vanished mod p^N, so its valuation is unknown."""

    precision: int

    def __str__(self) -> str:
        return f"indeterminate at precision {self.precision}"


def _trim(values: Sequence[int]) -> tuple[int, ...]:
    values = list(values)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class LambdaPoly:
    """A polynomial over Z/p^N; ``residues[k]`` is the T^k coefficient."""

    p: int
    precision: int
    residues: tuple[int, ...] = ()

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise DomainError(f"precision must be positive, got {self.precision}")
        m = self.p**self.precision
        if any(not 0 <= c < m for c in self.residues):
            raise DomainError("coefficient residue out of range")
        if self.residues and self.residues[-1] == 0:
            raise DomainError("trailing zero coefficients must be trimmed")

    @classmethod
    def from_ints(
        cls, coeffs: Sequence[int], p: int, precision: int = DEFAULT_PRECISION
    ) -> LambdaPoly:
        m = p**precision
        return cls(p, precision, _trim([c % m for c in coeffs]))

    @classmethod
    def from_scalars(cls, coeffs: Sequence[PadicScalar]) -> LambdaPoly:
        if not coeffs:
            raise StructuralError("cannot infer the ring from an empty coefficient list")
        p, n = coeffs[0].p, coeffs[0].precision
        if any((c.p, c.precision) != (p, n) for c in coeffs):
            raise StructuralError("coefficients from different rings")
        return cls(p, n, _trim([c.residue for c in coeffs]))

    @classmethod
    def parse(cls, text: str, p: int, precision: int = DEFAULT_PRECISION) -> LambdaPoly:
        return cls.from_ints(parse_poly(text), p, precision)

    @classmethod
    def monomial(cls, k: int, p: int, precision: int = DEFAULT_PRECISION) -> LambdaPoly:
        return cls.from_ints([0] * k + [1], p, precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def coeffs(self) -> tuple[PadicScalar, ...]:
        return tuple(PadicScalar(self.p, self.precision, c) for c in self.residues)

    @property
    def degree(self) -> int | None:
        return len(self.residues) - 1 if self.residues else None

    def is_zero(self) -> bool:
        return not self.residues

    def coefficient(self, k: int) -> int:
        return self.residues[k] if k < len(self.residues) else 0

    def _check(self, other: LambdaPoly) -> None:
        if not isinstance(other, LambdaPoly):
            raise StructuralError(f"cannot combine LambdaPoly with {type(other).__name__}")
        if (self.p, self.precision) != (other.p, other.precision):
            raise StructuralError(
                f"mismatched rings: p={self.p}, N={self.precision} vs "
                f"p={other.p}, N={other.precision}"
            )

    def _new(self, values: Sequence[int]) -> LambdaPoly:
        return LambdaPoly.from_ints(values, self.p, self.precision)

    def __add__(self, other: LambdaPoly) -> LambdaPoly:
        self._check(other)
        n = max(len(self.residues), len(other.residues))
        return self._new([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    def __sub__(self, other: LambdaPoly) -> LambdaPoly:
        self._check(other)
        n = max(len(self.residues), len(other.residues))
        return self._new([self.coefficient(k) - other.coefficient(k) for k in range(n)])

    def __neg__(self) -> LambdaPoly:
        return self._new([-c for c in self.residues])

    def __mul__(self, other: LambdaPoly | int) -> LambdaPoly:
        if isinstance(other, int):
            return self._new([c * other for c in self.residues])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [0] * (len(self.residues) + len(other.residues) - 1)
        for i, a in enumerate(self.residues):
            if a:
                for j, b in enumerate(other.residues):
                    out[i + j] += a * b
        return self._new(out)

    __rmul__ = __mul__

    def evaluate(self, x: int) -> int:
        """Value at an integer point, reduced mod p^N."""
        acc = 0
        for c in reversed(self.residues):
            acc = (acc * x + c) % self.modulus
        return acc

    def with_precision(self, precision: int) -> LambdaPoly:
        """Reinterpret at another precision.

        Raising precision lifts each residue to itself, i.e. treats the
        stored residues as the exact integer coefficients.
        """
        return LambdaPoly.from_ints(self.residues, self.p, precision)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        # balanced residues keep small negative coefficients readable
        half = self.modulus // 2
        out = ""
        for k in range(len(self.residues) - 1, -1, -1):
            c = self.residues[k]
            if not c:
                continue
            c = c - self.modulus if c > half else c
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            body = mono if abs(c) == 1 and mono else f"{abs(c)}{mono}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(T(?:\^(\d+))?)?")


def parse_poly(text: str) -> list[int]:
    """Parse ``"T^2+3T-3"``-style text into integer coefficients (low to high)."""
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise DomainError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise DomainError(f"missing sign between terms in {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return [coeffs.get(k, 0) for k in range(top + 1)]


@lru_cache(maxsize=256)
def _binomial_row(m: int, modulus: int) -> tuple[int, ...]:
    row = [1]
    c = 1
    for k in range(m):
        c = c * (m - k) // (k + 1)
        row.append(c % modulus)
    return tuple(row)


def omega(p: int, precision: int, n: int) -> LambdaPoly:
    """(1+T)^(p^n) - 1."""
    if n < 0:
        raise DomainError("level must be nonnegative")
    check_prime(p)
    row = list(_binomial_row(p**n, p**precision))
    row[0] = 0
    return LambdaPoly.from_ints(row, p, precision)


def nu(p: int, precision: int, n: int) -> LambdaPoly:
    """omega_n / T, the distinguished polynomial of degree p^n - 1."""
    w = omega(p, precision, n)
    return LambdaPoly(p, precision, w.residues[1:])


def is_distinguished(f: LambdaPoly) -> bool:
    if f.is_zero():
        raise StructuralError("the zero polynomial is not distinguished or otherwise")
    return f.residues[-1] == 1 and all(c % f.p == 0 for c in f.residues[:-1])


def _require_distinguished(f: LambdaPoly, what: str = "divisor") -> None:
    if f.is_zero() or not is_distinguished(f):
        raise DomainError(f"{what} {f} is not a distinguished polynomial")


def _reduce(values: list[int], d: tuple[int, ...], modulus: int) -> list[int]:
    """In-place remainder of ``values`` modulo the monic ``d``; returns quotient."""
    k = len(d) - 1
    q = [0] * max(len(values) - k, 0)
    for i in range(len(values) - 1, k - 1, -1):
        c = values[i] % modulus
        if c:
            q[i - k] = c
            for j in range(k):
                values[i - k + j] = (values[i - k + j] - c * d[j]) % modulus
        values[i] = 0
    return q


def weierstrass_divide(f: LambdaPoly, d: LambdaPoly) -> tuple[LambdaPoly, LambdaPoly]:
    """Return (q, r) with f = d*q + r and deg r < deg d."""
    f._check(d)
    _require_distinguished(d)
    values = list(f.residues)
    q = _reduce(values, d.residues, f.modulus)
    r = values[: len(d.residues) - 1]
    return f._new(q), f._new(r)


def _mulmod(a: list[int], b: list[int], d: tuple[int, ...], modulus: int) -> list[int]:
    k = len(d) - 1
    if k == 0:
        return []
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    _reduce(out, d, modulus)
    out = out[:k]
    return out + [0] * (k - len(out))


@lru_cache(maxsize=256)
def cyclotomic_factor(p: int, precision: int, k: int) -> LambdaPoly:
    """Phi_{p^k}(1+T) = nu_k / nu_{k-1}, an Eisenstein factor of omega_n for n >= k."""
    if k < 1:
        raise DomainError("cyclotomic factor index starts at 1")
    q, r = weierstrass_divide(nu(p, precision, k), nu(p, precision, k - 1))
    assert r.is_zero()
    return q


def nu_mod(f: LambdaPoly, n: int) -> LambdaPoly:
    """nu_n reduced modulo the distinguished f, without expanding nu_n.

    Uses nu_n = prod_{k<=n} sum_{i<p} (1+T)^(i p^(k-1)), all taken mod f.
    """
    _require_distinguished(f)
    p, m, d = f.p, f.modulus, f.residues
    k = len(d) - 1
    if k == 0:
        return f._new([])
    one = [1] + [0] * (k - 1)
    u = [1, 1] + [0] * max(k - 2, 0)
    _reduce(u, d, m)
    u = (u + [0] * k)[:k]
    acc = one
    for _ in range(n):
        phi = [0] * k
        power = one
        for _ in range(p):
            phi = [(a + b) % m for a, b in zip(phi, power)]
            power = _mulmod(power, u, d, m)
        acc = _mulmod(acc, phi, d, m)
        u = power  # (1+T)^(p^k) mod f
    return f._new(acc)


def multiplication_matrix(f: LambdaPoly, g: LambdaPoly) -> list[list[int]]:
    """Matrix of x -> g*x on Z_p[T]/(f); column j is the image of T^j."""
    f._check(g)
    _require_distinguished(f)
    k = f.degree
    _, r = weierstrass_divide(g, f)
    col = list(r.residues) + [0] * (k - len(r.residues))
    cols = []
    for _ in range(k):
        cols.append(col)
        col = _mulmod(col, [0, 1], f.residues, f.modulus)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def determinant_valuation(
    matrix: Sequence[Sequence[int]], p: int, precision: int
) -> int | IndeterminateAtPrecision:
    """p-adic valuation of det over Z/p^N, by elimination on minimal-valuation pivots.

    Each pivot is exact once it is nonzero mod p^N (Z/p^N is a chain ring),
    so the valuation is exact even when the sum reaches N.
    """
    m = p**precision
    a = [[x % m for x in row] for row in matrix]
    size = len(a)
    total = 0
    for k in range(size):
        best = None
        for i in range(k, size):
            for j in range(k, size):
                if a[i][j]:
                    v = int_valuation(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return IndeterminateAtPrecision(precision)
        v, i, j = best
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        pv = p**v
        unit_inv = pow(a[k][k] // pv, -1, m)
        for r in range(k + 1, size):
            if a[r][k]:
                factor = (a[r][k] // pv) * unit_inv % m
                rowk = a[k]
                a[r] = [(x - factor * y) % m for x, y in zip(a[r], rowk)]
        total += v
    return total


def ideal_index(f: LambdaPoly, g: LambdaPoly) -> int | IndeterminateAtPrecision:
    """Exponent v with [Lambda : (f, g)] = p^v, for distinguished f."""
    _require_distinguished(f, "first generator")
    if f.degree == 0:
        return 0
    return determinant_valuation(multiplication_matrix(f, g), f.p, f.precision)


def quotient_order_pj_nu(p: int, j: int, n: int) -> int:
    """Exponent of #Lambda/(p^j, nu_n) = p^(j (p^n - 1))."""
    check_prime(p)
    if j < 1 or n < 0:
        raise DomainError("need j >= 1 and n >= 0")
    return j * (p**n - 1)
