"""Ambiguous ideal classes in cyclic extensions.

Chevalley's formula counts the classes fixed by G = Gal(L/K):

    |C^G| = h * prod(e_P) / (n * [E : E ∩ N(L^x)])

Counting classes of a Z_p-extension layer this way gives the floor
e_n >= (s-1) p^n - 1 and hence mu >= s - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import DomainError, InconsistentInput
from .padic import check_prime, int_valuation


@dataclass(frozen=True)
class ChevalleyInput:
    h: int
    degree: int
    ram_indices: tuple[int, ...]
    unit_index: int

    def __post_init__(self):
        object.__setattr__(self, "ram_indices", tuple(self.ram_indices))
        if self.h < 1:
            raise DomainError("class number must be positive")
        if self.degree < 2:
            raise DomainError("a cyclic extension has degree >= 2")
        if self.unit_index < 1:
            raise DomainError("unit index must be positive")
        for e in self.ram_indices:
            if e < 1 or self.degree % e:
                raise DomainError(f"ramification index {e} does not divide {self.degree}")


def ambiguous_count(inp: ChevalleyInput) -> int:
    num = inp.h * prod(inp.ram_indices)
    den = inp.degree * inp.unit_index
    if num % den:
        raise InconsistentInput(
            f"Chevalley quotient {num}/{den} is not an integer; "
            "ramification or unit data are impossible"
        )
    return num // den


def strong_ambiguous_count(p: int, ram_indices: Sequence[int], unit_index: int) -> int:
    """Exponent of p in the number of strongly ambiguous classes.

    The class number of the base is prime to p, so only
    prod(e_P) / (p * unit_index) remains.
    """
    check_prime(p)
    num = prod(ram_indices)
    den = p * unit_index
    if unit_index < 1 or num % den:
        raise InconsistentInput(f"strong ambiguous count {num}/{den} is not an integer")
    return int_valuation(num // den, p)


def mu_lower_from_s(s: int) -> int:
    if s < 0:
        raise DomainError("s must be nonnegative")
    return max(s - 1, 0)


def en_lower_bound(s: int, p: int, n: int) -> int:
    if s < 1:
        raise DomainError("the class-count floor needs s >= 1")
    return max((s - 1) * p**n - 1, 0)


def strong_ambiguous_bounds(s: int, p: int, n: int) -> tuple[int, int]:
    """Range of the exponent of the strongly ambiguous class count at layer n.

    The unit index runs between 1 and p^(p^n).
    """
    if s < 1 or n < 0:
        raise DomainError("need s >= 1 and n >= 0")
    return max((s - 1) * p**n - 1, 0), s * p**n - 1
