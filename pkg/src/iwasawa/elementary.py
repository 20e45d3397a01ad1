"""Elementary Lambda-modules E = (+) Lambda/(p^mu_i) (+) (+) Lambda/(f_j).

Orders of finite quotients are always handled as exponents of p; values such
as 3^31 are never materialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, PrecisionExhausted
from .lambda_ring import (
    IndeterminateAtPrecision,
    LambdaPoly,
    cyclotomic_factor,
    ideal_index,
    is_distinguished,
    nu_mod,
    quotient_order_pj_nu,
    weierstrass_divide,
)
from .padic import DEFAULT_PRECISION, check_prime

MAX_PRECISION = 4096


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
"""Marker for an infinite quotient E/nu_n E."""


@dataclass(frozen=True)
class ElementaryModule:
    p: int
    precision: int = DEFAULT_PRECISION
    p_exponents: tuple[int, ...] = ()
    dist_polys: tuple[LambdaPoly, ...] = field(default=())

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "p_exponents", tuple(self.p_exponents))
        object.__setattr__(self, "dist_polys", tuple(self.dist_polys))
        for mu_i in self.p_exponents:
            if not isinstance(mu_i, int) or mu_i < 1:
                raise DomainError(f"p-exponents must be positive integers, got {mu_i!r}")
        for f in self.dist_polys:
            if (f.p, f.precision) != (self.p, self.precision):
                raise DomainError(f"summand {f} lives over a different ring")
            if f.is_zero() or not is_distinguished(f):
                raise DomainError(f"summand {f} is not distinguished")

    @classmethod
    def build(
        cls,
        p: int,
        p_exponents: Sequence[int] = (),
        polys: Sequence[str | Sequence[int]] = (),
        precision: int = DEFAULT_PRECISION,
    ) -> ElementaryModule:
        """Convenience constructor taking polynomials as text or integer lists."""
        fs = []
        for f in polys:
            if isinstance(f, str):
                fs.append(LambdaPoly.parse(f, p, precision))
            else:
                fs.append(LambdaPoly.from_ints(f, p, precision))
        return cls(p, precision, tuple(p_exponents), tuple(fs))

    def invariants(self) -> tuple[int, int]:
        return invariants(self)


def invariants(E: ElementaryModule) -> tuple[int, int]:
    """(mu, lambda) = (sum of p-exponents, sum of polynomial degrees)."""
    return sum(E.p_exponents), sum(f.degree for f in E.dist_polys)


def shares_factor_with_nu(f: LambdaPoly, n: int) -> bool:
    """True iff f and nu_n have a common factor over Q_p.

    nu_n is the product of the irreducible (Eisenstein) Phi_{p^k}(1+T) for
    k = 1..n, so a common factor means one of them divides f exactly.
    """
    if f.degree == 0:
        return False
    for k in range(1, n + 1):
        phi = cyclotomic_factor(f.p, f.precision, k)
        if phi.degree > f.degree:
            break
        if weierstrass_divide(f, phi)[1].is_zero():
            return True
    return False


def summand_index(f: LambdaPoly, n: int) -> int | _Infinite:
    """Exponent of #Lambda/(f, nu_n), doubling precision while it is invisible."""
    if shares_factor_with_nu(f, n):
        return INFINITE
    g = f
    while True:
        v = ideal_index(g, nu_mod(g, n))
        if not isinstance(v, IndeterminateAtPrecision):
            return v
        if g.precision >= MAX_PRECISION:
            raise PrecisionExhausted(
                f"index of ({f}, nu_{n}) not visible at precision {g.precision}"
            )
        g = g.with_precision(min(2 * g.precision, MAX_PRECISION))


def quotient_order_nu(E: ElementaryModule, n: int) -> int | _Infinite:
    """Exponent of #(E / nu_n E), or INFINITE."""
    if n < 0:
        raise DomainError("level must be nonnegative")
    total = sum(quotient_order_pj_nu(E.p, j, n) for j in E.p_exponents)
    for f in E.dist_polys:
        v = summand_index(f, n)
        if v is INFINITE:
            return INFINITE
        total += v
    return total


def p_torsion_order_nu(E: ElementaryModule, n: int) -> int:
    """Exponent of #(E / nu_n E)[p], valid once p^n - 1 >= deg f_j for all j."""
    if n < 0:
        raise DomainError("level must be nonnegative")
    bound = E.p**n - 1
    for f in E.dist_polys:
        if f.degree > bound:
            raise DomainError(f"need p^n - 1 >= deg f, violated by {f} at n={n}")
    return len(E.p_exponents) * bound + sum(f.degree for f in E.dist_polys)


# Floor for p = 2, n = 2, lambda = 1: a summand Lambda/(T - a) with 2 | a has
# nu_2(a) = a^3 + 4a^2 + 6a + 4 divisible by 4.
_NU2_BOUNDS_P2 = {0: 0, 1: 2, 2: 4}


def lambdathm_lower_bound(p: int, lam: int, n: int) -> int:
    """Lower bound on the exponent of #(E/nu_n E) for mu(E) = 0, lambda(E) = lam.

    n = 1 for any p; n = 2 only for p = 2.
    """
    check_prime(p)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    if n == 1:
        return min(lam, p - 1)
    if n == 2 and p == 2:
        return _NU2_BOUNDS_P2.get(lam, 3)
    raise DomainError(f"no lower bound available for p={p}, n={n}")


def bound_is_quoted(p: int, lam: int, n: int) -> bool:
    """False for the one implementation-derived constant (p=2, n=2, lambda=1)."""
    return not (p == 2 and n == 2 and lam == 1)
