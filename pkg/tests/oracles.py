"""Independent reference computations used only by the tests.

Nothing here imports the package's algebra: orders of quotient rings are
computed over Z with sympy (Smith normal form, resultants).
"""

from sympy import Matrix, Poly, ZZ, binomial, resultant, symbols
from sympy.matrices.normalforms import smith_normal_form

T = symbols("T")


def p_valuation(n, p):
    n = abs(int(n))
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def nu_coeffs(p, n):
    """Integer coefficients (ascending) of ((1+T)^(p^n) - 1) / T."""
    m = p**n
    return [int(binomial(m, k + 1)) for k in range(m)]


def cokernel_p_exponent(relations, size, p):
    """p-exponent of Z^size / (span of relation vectors), None if infinite."""
    M = Matrix(size, len(relations), lambda i, j: relations[j][i])
    D = smith_normal_form(M, domain=ZZ)
    diag = [D[i, i] for i in range(min(D.shape))]
    if len(diag) < size or any(x == 0 for x in diag):
        return None
    return sum(p_valuation(x, p) for x in diag)


def shifted(coeffs, i, size):
    v = [0] * size
    for k, c in enumerate(coeffs):
        v[i + k] = c
    return v


def quotient_p_exponent(gens, p, extra_degree=0):
    """p-exponent of #Z[T]/(gens); the first generator must be monic.

    Works in Z[T] truncated at the degree of the monic generator plus
    ``extra_degree``, which is exact because division by a monic
    polynomial never raises degree.
    """
    f = gens[0]
    size = len(f) - 1 + max([len(g) - 1 for g in gens[1:]] + [0]) + extra_degree
    relations = []
    for g in gens:
        for i in range(size - len(g) + 1):
            relations.append(shifted(g, i, size))
    return cokernel_p_exponent(relations, size, p)


def pj_nu_oracle(p, j, n):
    """p-exponent of #Lambda/(p^j, nu_n) through the Smith normal form."""
    nu = nu_coeffs(p, n)
    return quotient_p_exponent([nu, [p**j]], p, extra_degree=1)


def resultant_index(f, g, p):
    """v_p of Res(f, g): the p-exponent of #Z_p[T]/(f, g) for monic f."""
    F = Poly(list(reversed(f)), T, domain=ZZ)
    G = Poly(list(reversed(g)), T, domain=ZZ)
    return p_valuation(resultant(F, G), p)


def quadratic_nu2_index(a, b):
    """Exponent of 2 in #Lambda/(T^2 + aT + b, nu_2) from the closed form.

    Reducing nu_2 = T^3 + 4T^2 + 6T + 4 modulo T^2 + aT + b leaves xT + y with
    x = a^2 - b - 4a + 6 and y = ab - 4b + 4; the index is the norm
    b x^2 - a x y + y^2 of that remainder.
    """
    x = a * a - b - 4 * a + 6
    y = a * b - 4 * b + 4
    return p_valuation(b * x * x - a * x * y + y * y, 2)
