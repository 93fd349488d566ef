"""Shared brute-force oracles for the test suite.

Everything here is deliberately naive: enumeration and trial division,
independent of the code paths being checked.
"""

from __future__ import annotations

import random
from fractions import Fraction

from fqcover import FieldSpec, Poly, factor
from fqcover.algebra import enumerate_monic, poly_from_index


def random_poly(field: FieldSpec, rng: random.Random, max_degree: int) -> Poly:
    degree = rng.randint(-1, max_degree)
    if degree < 0:
        return Poly.zero(field)
    coeffs = [rng.randrange(field.q) for _ in range(degree)]
    coeffs.append(rng.randrange(1, field.q))
    return Poly(field, coeffs)


def random_monic(field: FieldSpec, rng: random.Random, degree: int) -> Poly:
    return Poly(field, [rng.randrange(field.q) for _ in range(degree)] + [1])


def top_factor_degree(f: Poly) -> int:
    """Largest degree among the irreducible factors (0 for constants)."""
    if f.degree < 1:
        return 0
    return max(int(p.degree) for p, _ in factor(f))


def brute_friable_count(field: FieldSpec, n: int, m: int) -> int:
    """psi by full enumeration and factorization."""
    if n == 0:
        return 1
    return sum(1 for f in enumerate_monic(field, n) if top_factor_degree(f) <= m)


def brute_crt_solutions(pairs, modulus: Poly) -> list[Poly]:
    field = modulus.field
    out = []
    for idx in range(field.q ** int(modulus.degree)):
        r = poly_from_index(field, idx)
        if all(((r - a) % m).is_zero for a, m in pairs):
            out.append(r)
    return out


def random_fraction_delta(rng: random.Random) -> Fraction:
    """A random distortion parameter in [0, 1/2]."""
    den = rng.choice([2, 3, 4, 5, 8])
    num = rng.randint(0, den // 2)
    return Fraction(num, den)
