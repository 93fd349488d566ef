"""Exact counts of friable (smooth) monic polynomials and prime-reciprocal sums.

A monic polynomial is m-friable when every irreducible factor has degree
at most m. The number of degree-n m-friable monic polynomials comes from
the multiset recurrence of the generating identity
prod_{d<=m} (1 - x^d)^(-pi(d)), with pi(d) the number of monic degree-d
irreducibles. Norm tail sums over friable polynomials are evaluated as
exact rationals: the full Euler product minus a finite partial sum, so no
truncation error enters the certifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, exp

from .algebra import FieldSpec


def _mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def irreducible_count(field: FieldSpec, degree: int) -> int:
    """Number of monic irreducibles of the given degree over F_q."""
    if degree < 1:
        raise ValueError("degree must be positive")
    q = field.q
    total = 0
    for e in range(1, degree + 1):
        if degree % e == 0:
            total += _mobius(e) * q ** (degree // e)
    assert total % degree == 0
    return total // degree


@lru_cache(maxsize=None)
def _psi_columns(field: FieldSpec, max_v: int, max_mu: int) -> tuple[tuple[int, ...], ...]:
    # columns[d][v] counts degree-v monics with all factor degrees <= d
    cur = [1] + [0] * max_v
    cols = [tuple(cur)]
    for d in range(1, max_mu + 1):
        pi_d = irreducible_count(field, d)
        new = [0] * (max_v + 1)
        for v in range(max_v + 1):
            acc = 0
            k = 0
            while k * d <= v:
                acc += comb(pi_d + k - 1, k) * cur[v - k * d]
                k += 1
            new[v] = acc
        cur = new
        cols.append(tuple(cur))
    return tuple(cols)


def friable_count(field: FieldSpec, n: int, m: int) -> int:
    """Exact number of monic degree-n polynomials with max factor degree <= m."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if m < 1:
        raise ValueError("smoothness bound must be positive")
    mu = min(m, n) if n else 0
    return _psi_columns(field, n, mu)[mu][n]


@dataclass(frozen=True)
class FriableTable:
    """Matrix of friable counts: counts[v][mu-1] for 0 <= v <= N, 1 <= mu <= m."""

    field: FieldSpec
    max_degree: int
    max_smoothness: int
    counts: tuple[tuple[int, ...], ...]
    irreducible_counts: tuple[int, ...]

    def count(self, v: int, mu: int) -> int:
        return self.counts[v][mu - 1]

    def to_csv(self) -> str:
        header = "degree," + ",".join(f"m={mu}" for mu in range(1, self.max_smoothness + 1))
        lines = [header]
        for v, row in enumerate(self.counts):
            lines.append(f"{v}," + ",".join(str(c) for c in row))
        return "\n".join(lines) + "\n"


def friable_table(field: FieldSpec, max_degree: int, max_smoothness: int) -> FriableTable:
    if max_degree < 0 or max_smoothness < 1:
        raise ValueError("need max_degree >= 0 and max_smoothness >= 1")
    mu_cap = min(max_smoothness, max_degree) if max_degree else 1
    cols = _psi_columns(field, max_degree, mu_cap)
    rows = []
    for v in range(max_degree + 1):
        rows.append(
            tuple(cols[min(mu, mu_cap, v) if v else 0][v] for mu in range(1, max_smoothness + 1))
        )
    pis = tuple(irreducible_count(field, d) for d in range(1, max_smoothness + 1))
    return FriableTable(
        field=field,
        max_degree=max_degree,
        max_smoothness=max_smoothness,
        counts=tuple(rows),
        irreducible_counts=pis,
    )


def euler_product(field: FieldSpec, m: int) -> Fraction:
    """Exact value of sum_v psi(v, m) q^-v = prod_{d<=m} (1 - q^-d)^(-pi(d))."""
    if m < 1:
        raise ValueError("smoothness bound must be positive")
    q = field.q
    out = Fraction(1)
    for d in range(1, m + 1):
        out *= Fraction(q**d, q**d - 1) ** irreducible_count(field, d)
    return out


def friable_tail(field: FieldSpec, t: int, m: int) -> Fraction:
    """Exact sum of q^-deg(d) over monic m-friable d with deg d >= t.

    Constants (degree 0) count as friable, so they contribute exactly when
    t = 0. Computed with zero truncation error as the Euler product minus
    the partial sum below t.
    """
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    total = euler_product(field, m)
    q = field.q
    for v in range(t):
        total -= Fraction(friable_count(field, v, m), q**v)
    return total


def friable_tail_top(field: FieldSpec, t: int, m: int) -> Fraction:
    """Exact sum of q^-deg(d) over monic d with deg d >= t and top factor degree exactly m.

    Constants have no top factor degree and never contribute.
    """
    if m < 1:
        raise ValueError("top degree must be positive")
    if m == 1:
        constants = Fraction(1) if t == 0 else Fraction(0)
        return friable_tail(field, t, 1) - constants
    return friable_tail(field, t, m) - friable_tail(field, t, m - 1)


def mertens_sum(field: FieldSpec, max_degree: int) -> Fraction:
    """Exact sum of 1/|p| over monic irreducibles p of degree <= max_degree."""
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    q = field.q
    return sum(
        (Fraction(irreducible_count(field, d), q**d) for d in range(1, max_degree + 1)),
        Fraction(0),
    )


def warlimont_ratio(field: FieldSpec, n: int, m: int) -> float:
    """Diagnostic ratio psi(n, m) / (q^n e^(-n/2m)); not a certified bound."""
    if not n >= m >= 3:
        raise ValueError("requires n >= m >= 3")
    return friable_count(field, n, m) / (field.q**n * exp(-n / (2 * m)))
