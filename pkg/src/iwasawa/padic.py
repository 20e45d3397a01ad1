"""p-adic integers truncated at a fixed precision p^N.

A :class:`PadicScalar` is a residue class in Z/p^N standing in for an
element of Z_p.  Precision travels with the value; combining values with
different primes or precisions is an error rather than a silent coercion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

from .errors import DomainError, NotAUnit, StructuralError

DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class AtLeastPrecision:
    """Valuation of a residue that vanishes mod p^N: the true value is >= N."""

    precision: int

    def __str__(self) -> str:
        return f">={self.precision}"


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"p must be a prime, got {p!r}")
    return p


def int_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PadicScalar:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise DomainError(f"precision must be positive, got {self.precision}")
        if not 0 <= self.residue < self.p ** self.precision:
            raise DomainError(
                f"residue {self.residue} outside [0, {self.p}^{self.precision})"
            )

    @classmethod
    def of(cls, value: int, p: int, precision: int = DEFAULT_PRECISION) -> PadicScalar:
        """Reduce an arbitrary integer into Z/p^N."""
        return cls(p, precision, value % p**precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _check(self, other: PadicScalar) -> None:
        if not isinstance(other, PadicScalar):
            raise StructuralError(f"cannot combine PadicScalar with {type(other).__name__}")
        if (self.p, self.precision) != (other.p, other.precision):
            raise StructuralError(
                f"mismatched rings: Z/{self.p}^{self.precision} vs "
                f"Z/{other.p}^{other.precision}"
            )

    def _new(self, value: int) -> PadicScalar:
        return PadicScalar(self.p, self.precision, value % self.modulus)

    def __add__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return self._new(self.residue + other.residue)

    def __sub__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return self._new(self.residue - other.residue)

    def __mul__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return self._new(self.residue * other.residue)

    def __neg__(self) -> PadicScalar:
        return self._new(-self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0

    def valuation(self) -> int | AtLeastPrecision:
        if self.residue == 0:
            return AtLeastPrecision(self.precision)
        return int_valuation(self.residue, self.p)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def invert(self) -> PadicScalar:
        if not self.is_unit():
            raise NotAUnit(f"{self.residue} has positive {self.p}-adic valuation")
        return self._new(pow(self.residue, -1, self.modulus))

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.p}^{self.precision})"


def add(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x + y


def mul(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x * y


def valuation(x: PadicScalar) -> int | AtLeastPrecision:
    return x.valuation()


def invert(x: PadicScalar) -> PadicScalar:
    return x.invert()
