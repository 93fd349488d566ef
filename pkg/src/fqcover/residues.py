"""Bulk residue enumeration for rings F_q[x]/<M>.

Glue between the exact Poly layer and the packed-index kernels: builds the
scalar-multiple tables the kernels walk, produces coverage bitmaps for
progressions, projection maps between residue rings, and canonical-least
uncovered residues.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .algebra import FieldSpec, Poly, poly_from_index, poly_to_index
from .errors import ExhaustiveLimitExceededError

# add tables index with uint8 codes, so enumeration is capped at q = 256
_KERNEL_MAX_Q = 256

_ADD_TABLES: dict[FieldSpec, np.ndarray] = {}


def check_enumerable(field: FieldSpec, ring_degree: int, limit_bits: int) -> int:
    """Return q**ring_degree after checking it fits the exhaustive budget."""
    size = field.q**ring_degree
    if size > 1 << limit_bits:
        raise ExhaustiveLimitExceededError(
            f"{field.q}^{ring_degree} residues exceed the 2^{limit_bits} budget"
        )
    if field.q > _KERNEL_MAX_Q:
        raise ExhaustiveLimitExceededError(
            f"residue enumeration supports q <= {_KERNEL_MAX_Q}, got q = {field.q}"
        )
    return size


def field_add_table(field: FieldSpec) -> np.ndarray:
    """Flat q*q table of code sums, shared by the kernels."""
    tab = _ADD_TABLES.get(field)
    if tab is None:
        q = field.q
        if q > _KERNEL_MAX_Q:
            raise ExhaustiveLimitExceededError(f"q = {q} too large for kernel tables")
        tab = np.empty(q * q, dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                tab[a * q + b] = field.add(a, b)
        tab.setflags(write=False)
        _ADD_TABLES[field] = tab
    return tab


def _scalar_multiple_rows(field: FieldSpec, steps: list[Poly]) -> np.ndarray:
    """Packed indices of c * step for each step polynomial and scalar c."""
    q = field.q
    rows = np.zeros((len(steps), q), dtype=np.uint64)
    for i, step in enumerate(steps):
        for c in range(1, q):
            rows[i, c] = poly_to_index(step.scale(c))
    return rows


def mark_progression(flags: np.ndarray, offset: Poly, modulus: Poly, ring_degree: int) -> None:
    """Mark every residue of degree < ring_degree congruent to offset mod modulus."""
    field = modulus.field
    m = ring_degree - int(modulus.degree)
    steps = [modulus.shift(i) for i in range(m)]
    _kernels.mark_progression(
        flags,
        field.q,
        ring_degree,
        poly_to_index(offset % modulus),
        _scalar_multiple_rows(field, steps),
        field_add_table(field),
    )


def coverage_flags(field: FieldSpec, progressions, ring_degree: int) -> np.ndarray:
    """Bitmap over packed residues mod any degree-ring_degree modulus.

    Every progression modulus must divide the ring modulus, so membership
    only depends on the packed residue.
    """
    flags = np.zeros(field.q**ring_degree, dtype=np.uint8)
    for prog in progressions:
        mark_progression(flags, prog.offset, prog.modulus, ring_degree)
    return flags


def parent_map(child_modulus: Poly, parent_modulus: Poly) -> np.ndarray:
    """parents[r] = packed index of (residue r mod child) reduced mod parent."""
    field = child_modulus.field
    n_child = int(child_modulus.degree)
    reduced = [Poly.monomial(field, i) % parent_modulus for i in range(n_child)]
    out = np.empty(field.q**n_child, dtype=np.int64)
    _kernels.project_parents(
        out,
        field.q,
        n_child,
        _scalar_multiple_rows(field, reduced),
        field_add_table(field),
    )
    return out


def canonical_least_unset(field: FieldSpec, flags: np.ndarray, ring_degree: int):
    """Packed index of the canonically least unmarked residue, or None.

    Canonical order: degree first, then coefficients compared from the
    constant term upward.
    """
    unset = np.flatnonzero(flags == 0)
    if unset.size == 0:
        return None
    q = field.q
    degs = np.full(unset.shape, -1, dtype=np.int64)
    for i in range(ring_degree):
        dig = (unset // q**i) % q
        degs[dig > 0] = i
    # within one degree d, rank = sum_i c_i * q^(d-i): c_0 weighs most
    rank = np.zeros(unset.shape, dtype=np.int64)
    for i in range(ring_degree):
        dig = ((unset // q**i) % q).astype(np.int64)
        exp = degs - i
        live = exp >= 0
        rank[live] += dig[live] * np.power(q, exp[live].astype(np.int64))
    key = (degs + 1) * (q**ring_degree) + rank
    return int(unset[int(np.argmin(key))])


def residue_poly(field: FieldSpec, index: int) -> Poly:
    return poly_from_index(field, index)
